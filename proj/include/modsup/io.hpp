#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "modsup/automaton.hpp"

namespace modsup {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An automaton together with the event attributes its file declared.
struct LoadedAutomaton {
  Automaton automaton;
  EventTable declared;
  std::string source;
};

/// Reads the AUTOMATON/EVENTS/STATES/TRANSITIONS/END text format. Unreachable
/// states are dropped.
LoadedAutomaton parse_automaton(std::string_view text, const std::string& source = "<memory>");
LoadedAutomaton load_automaton(const std::filesystem::path& path);

/// Deterministic serialization; attributes come from `table` (events missing
/// from it are written as controllable and observable).
std::string format_automaton(const Automaton& a, const EventTable& table);
void save_automaton(const std::filesystem::path& path, const Automaton& a, const EventTable& table);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace modsup
