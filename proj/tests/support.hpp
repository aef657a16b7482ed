#pragma once

#include <filesystem>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "modsup/automaton.hpp"
#include "modsup/checks.hpp"
#include "modsup/operations.hpp"
#include "modsup/oracle.hpp"

namespace testing {

using namespace modsup;

struct Edge {
  std::string from;
  Event event;
  std::string to;
};

/// The first state listed is initial.
inline Automaton make(const std::string& name, const EventSet& alphabet, const std::vector<std::string>& states,
                      const std::set<std::string>& marked, const std::vector<Edge>& edges) {
  Automaton a(name, alphabet);
  std::map<std::string, StateId> id;
  for (const auto& s : states) id[s] = a.add_state(s, marked.count(s) > 0);
  a.set_initial(id.at(states.front()));
  for (const auto& e : edges) a.add_transition(id.at(e.from), e.event, id.at(e.to));
  return a;
}

/// Recognizer of the single string `w` (only its end marked) or of its
/// prefix closure (`closed`).
inline Automaton chain(const std::string& name, const EventSet& alphabet, const std::string& w, bool closed = true) {
  const Word word = word_from_string(w);
  Automaton a(name, alphabet);
  StateId prev = a.add_state("0", closed || word.empty());
  a.set_initial(prev);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const StateId next = a.add_state(std::to_string(i + 1), closed || i + 1 == word.size());
    a.add_transition(prev, word[i], next);
    prev = next;
  }
  return a;
}

/// Recognizer of (cycle)*, only the initial state marked.
inline Automaton star(const std::string& name, const EventSet& alphabet, const std::string& cycle) {
  const Word word = word_from_string(cycle);
  Automaton a(name, alphabet);
  a.set_initial(a.add_state("0", true));
  for (std::size_t i = 1; i < word.size(); ++i) a.add_state(std::to_string(i));
  for (std::size_t i = 0; i < word.size(); ++i)
    a.add_transition(static_cast<StateId>(i), word[i], static_cast<StateId>((i + 1) % word.size()));
  return a;
}

inline std::set<Word> words(std::initializer_list<std::string> ws) {
  std::set<Word> out;
  for (const auto& w : ws) out.insert(word_from_string(w));
  return out;
}

inline std::set<Word> marked(const Automaton& a, int bound = 8) { return oracle::marked_slice(a, bound).strings; }
inline std::set<Word> generated(const Automaton& a, int bound = 8) { return oracle::generated_slice(a, bound).strings; }

inline EventSet events(const std::string& list) {
  EventSet out;
  std::istringstream in(list);
  std::string e;
  while (in >> e) out.insert(e);
  return out;
}

/// "name:co name:ux ..." with c/u for controllability and o/x for observability.
inline EventTable table(const std::string& spec) {
  EventTable t;
  std::istringstream in(spec);
  std::string item;
  while (in >> item) {
    const auto colon = item.find(':');
    t.set(item.substr(0, colon), {item[colon + 1] == 'c', item[colon + 2] == 'o'});
  }
  return t;
}

/// Three modules where only c is observable and u is shared but unobservable.
struct Counterexample {
  std::vector<Automaton> plants;
  std::vector<Automaton> specs;
  EventTable table;

  Counterexample() {
    plants = {chain("L1", events("u1 u c"), "u1 u c"), chain("L2", events("u2 c u"), "u2 c u"),
              chain("L3", events("u3 c"), "u3 c")};
    specs = {chain("K1", events("u1 u c"), "u1"), chain("K2", events("u2 c u"), "u2"),
             chain("K3", events("u3 c"), "u3")};
    table = testing::table("u1:cx u2:cx u3:cx u:ux c:co");
  }

  ModularSystem system() const {
    ModularSystem m;
    m.table = table;
    for (std::size_t i = 0; i < plants.size(); ++i) m.modules.push_back({plants[i], specs[i]});
    return m;
  }
};

/// Train models and local specifications of the railroad reconstruction.
struct Railroad {
  std::vector<Automaton> plants;
  std::vector<Automaton> specs;
  Automaton global;
  EventTable table;

  Railroad() {
    for (const std::string side : {"w", "e"}) {
      const std::string w = "w_" + side, a = "a_" + side, e = "e_" + side, l = "l_" + side;
      const EventSet alpha{w, a, e, l};
      plants.push_back(make("G" + std::string(side == "w" ? "1" : "2"), alpha, {"away", "requesting", "bridge"},
                            {"away", "requesting", "bridge"},
                            {{"away", w, "away"},
                             {"away", a, "requesting"},
                             {"requesting", w, "away"},
                             {"requesting", e, "bridge"},
                             {"bridge", l, "away"}}));
      specs.push_back(star(side == "w" ? "K1" : "K2", alpha, w + " " + a + " " + e + " " + l));
    }
    global = prefix_closure(star("K", events("w_w a_w e_w l_w w_e a_e e_e l_e"),
                                 "w_w w_e a_w e_w l_w w_w a_e e_e l_e w_e"));
    table = testing::table("w_w:co a_w:co e_w:co l_w:cx w_e:co a_e:co e_e:co l_e:cx");
  }

  ModularSystem local_system() const {
    ModularSystem m;
    m.table = table;
    for (std::size_t i = 0; i < plants.size(); ++i) m.modules.push_back({plants[i], specs[i]});
    return m;
  }

  ModularSystem global_system() const {
    ModularSystem m;
    m.table = table;
    for (const auto& p : plants) m.modules.push_back({p, std::nullopt});
    m.global_spec = global;
    return m;
  }
};

inline std::filesystem::path data_dir() { return MODSUP_DATA_DIR; }

}  // namespace testing
