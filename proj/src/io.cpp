#include "modsup/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "modsup/operations.hpp"

namespace modsup {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string content = line;
  if (auto hash = content.find('#'); hash != std::string::npos) content.erase(hash);
  std::vector<std::string> tokens;
  std::istringstream in(content);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

enum class Section { Header, Events, States, Transitions, Done };

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

LoadedAutomaton parse_automaton(std::string_view text, const std::string& source) {
  LoadedAutomaton out;
  out.source = source;
  std::string name;
  EventSet alphabet;
  struct StateDecl {
    std::string id;
    bool initial;
    bool marked;
  };
  std::vector<StateDecl> states;
  std::map<std::string, std::size_t> state_index;
  struct TransDecl {
    std::string src, event, dst;
    std::size_t line;
  };
  std::vector<TransDecl> transitions;

  Section section = Section::Header;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool seen_end = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };
    if (seen_end) fail("content after END");
    const std::string& head = tok[0];
    if (head == "AUTOMATON") {
      if (section != Section::Header || !name.empty()) fail("unexpected AUTOMATON");
      if (tok.size() != 2) fail("AUTOMATON expects exactly one name");
      name = tok[1];
      continue;
    }
    if (head == "EVENTS") {
      if (section != Section::Header || name.empty()) fail("EVENTS must follow AUTOMATON");
      section = Section::Events;
      continue;
    }
    if (head == "STATES") {
      if (section != Section::Events) fail("STATES must follow EVENTS");
      section = Section::States;
      continue;
    }
    if (head == "TRANSITIONS") {
      if (section != Section::States) fail("TRANSITIONS must follow STATES");
      section = Section::Transitions;
      continue;
    }
    if (head == "END") {
      if (section != Section::Transitions) fail("END before TRANSITIONS");
      seen_end = true;
      section = Section::Done;
      continue;
    }
    switch (section) {
      case Section::Events: {
        if (tok.size() != 2 || tok[1].size() != 2) fail("event line must be '<event> <c|u><o|x>'");
        const char c = tok[1][0], o = tok[1][1];
        if ((c != 'c' && c != 'u') || (o != 'o' && o != 'x'))
          fail("bad event attributes '" + tok[1] + "'");
        if (alphabet.count(head)) fail("duplicate event '" + head + "'");
        alphabet.insert(head);
        out.declared.set(head, {c == 'c', o == 'o'});
        break;
      }
      case Section::States: {
        StateDecl d{head, false, false};
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (tok[i] == "initial" && !d.initial) d.initial = true;
          else if (tok[i] == "marked" && !d.marked) d.marked = true;
          else fail("bad state flag '" + tok[i] + "'");
        }
        if (state_index.count(head)) fail("duplicate state '" + head + "'");
        state_index.emplace(head, states.size());
        states.push_back(d);
        break;
      }
      case Section::Transitions: {
        if (tok.size() != 3) fail("transition line must be '<src> <event> <dst>'");
        transitions.push_back({tok[0], tok[1], tok[2], lineno});
        break;
      }
      default:
        fail("unexpected line '" + raw + "'");
    }
  }
  if (!seen_end) throw ParseError(source, lineno, "missing END");

  Automaton a(name, alphabet);
  std::size_t initial_count = 0;
  for (const auto& d : states) {
    const StateId s = a.add_state(d.id, d.marked);
    if (d.initial) {
      ++initial_count;
      a.set_initial(s);
    }
  }
  if (initial_count != 1)
    throw ParseError(source, lineno, "expected exactly one initial state, found " + std::to_string(initial_count));
  for (const auto& t : transitions) {
    auto src = state_index.find(t.src);
    auto dst = state_index.find(t.dst);
    if (src == state_index.end()) throw ParseError(source, t.line, "unknown state '" + t.src + "'");
    if (dst == state_index.end()) throw ParseError(source, t.line, "unknown state '" + t.dst + "'");
    const auto e = a.event_index(t.event);
    if (!e) throw ParseError(source, t.line, "undeclared event '" + t.event + "'");
    if (a.next(static_cast<StateId>(src->second), *e) != kNoState)
      throw ParseError(source, t.line, "duplicate transition from '" + t.src + "' on '" + t.event + "'");
    a.add_transition(static_cast<StateId>(src->second), *e, static_cast<StateId>(dst->second));
  }
  out.automaton = accessible(a);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

LoadedAutomaton load_automaton(const std::filesystem::path& path) {
  return parse_automaton(read_file(path), path.string());
}

std::string format_automaton(const Automaton& a, const EventTable& table) {
  std::ostringstream out;
  out << "AUTOMATON " << a.name() << "\n";
  out << "EVENTS\n";
  for (const auto& e : a.events()) {
    const EventAttributes attrs = table.contains(e) ? table.attributes(e) : EventAttributes{};
    out << e << ' ' << (attrs.controllable ? 'c' : 'u') << (attrs.observable ? 'o' : 'x') << "\n";
  }
  // Labels of composed states may collide after capping; fall back to indices then.
  std::map<std::string, int> seen;
  bool unique = true;
  for (StateId s = 0; s < a.state_count(); ++s) {
    const auto& l = a.label(s);
    if (l.empty() || l.find_first_of(" \t#") != std::string::npos || seen[l]++) unique = false;
  }
  auto id = [&](StateId s) { return unique ? a.label(s) : "s" + std::to_string(s); };
  out << "STATES\n";
  for (StateId s = 0; s < a.state_count(); ++s) {
    out << id(s);
    if (s == a.initial()) out << " initial";
    if (a.marked(s)) out << " marked";
    out << "\n";
  }
  out << "TRANSITIONS\n";
  for (StateId s = 0; s < a.state_count(); ++s)
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId t = a.next(s, e);
      if (t != kNoState) out << id(s) << ' ' << a.events()[e] << ' ' << id(t) << "\n";
    }
  out << "END\n";
  return out.str();
}

void save_automaton(const std::filesystem::path& path, const Automaton& a, const EventTable& table) {
  write_file(path, format_automaton(a, table));
}

}  // namespace modsup
