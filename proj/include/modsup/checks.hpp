#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modsup/automaton.hpp"
#include "modsup/io.hpp"

namespace modsup {

enum class Status { Holds, HoldsUpToBound, Fails, NotRun };

std::string to_string(Status s);
Status parse_status(const std::string& text);

struct CheckVerdict {
  std::string name;
  Status status = Status::NotRun;
  /// Counterexample strings (events, strings, or file names); empty unless failed.
  std::vector<std::string> witness;
  std::optional<int> bound;
  std::string note;
  double wall_ms = 0.0;

  bool passed() const { return status == Status::Holds || status == Status::HoldsUpToBound; }
  bool failed() const { return status == Status::Fails; }
};

CheckVerdict holds(std::string name, std::string note = {});
CheckVerdict fails(std::string name, std::vector<std::string> witness, std::string note = {});

struct Module {
  Automaton plant;
  std::optional<Automaton> spec;
};

/// Plants with either per-module specs or one global spec, over one event table.
struct ModularSystem {
  std::vector<Module> modules;
  std::optional<Automaton> global_spec;
  EventTable table;
  std::optional<EventSet> kappa;

  std::vector<Automaton> plants() const;
  std::vector<EventSet> alphabets() const;
  EventSet alphabet() const;
  bool has_local_specs() const;
  /// Throws Error when the spec layout or event attributes are inconsistent.
  void validate() const;
};

/// Events occurring in at least two of the alphabets.
EventSet shared_alphabet(std::span<const EventSet> alphabets);
EventSet shared_alphabet(const ModularSystem& m);

CheckVerdict check_shared_observable(const ModularSystem& m);
CheckVerdict check_shared_controllable(const ModularSystem& m);

/// Per-file attribute declarations are consistent; witness names the event and
/// the two files.
CheckVerdict check_observability_agreement(std::span<const LoadedAutomaton> files);
CheckVerdict check_observability_agreement(const ModularSystem& m);

/// Merges declarations into one table; throws Error naming the offending
/// event and files on any attribute conflict.
EventTable merge_declarations(std::span<const LoadedAutomaton> files);

/// min(12, 2 * product state count).
int default_moc_bound(std::size_t product_states);

/// Largest bound <= `bound` for which the strings check_moc_bounded would
/// enumerate for module `i` number at most `budget`.
int affordable_moc_bound(std::span<const Automaton> plants, std::size_t i, int bound,
                         std::size_t budget = 200000);

/// Bounded MOC check for module `i`: the universally quantified strings s and
/// t' range over length <= bound, the existence of s' is decided exactly.
CheckVerdict check_moc_bounded(std::span<const Automaton> plants, const EventSet& observable,
                               std::size_t i, int bound);
CheckVerdict check_moc_bounded(const ModularSystem& m, std::size_t i, int bound);

/// Lm(g)-observer property of the projection onto `r.target()`. Blocking
/// inputs are trimmed first and the verdict notes it.
CheckVerdict is_observer(const Automaton& g, const ProjectionSpec& r);

/// Output control consistency of the projection for L(l).
CheckVerdict is_occ(const Automaton& l, const ProjectionSpec& r, const EventSet& uncontrollable);

/// Local control consistency of the projection for L(l).
CheckVerdict is_lcc(const Automaton& l, const ProjectionSpec& r, const EventSet& uncontrollable);

/// P_i(∥ L_j) = L_i on generated languages.
CheckVerdict check_natural_projection_consistency(const ModularSystem& m, std::size_t i);

/// Replaces each plant by P_i(L) and intersects local specs with it.
ModularSystem replace_locals(const ModularSystem& m);

}  // namespace modsup
