#include "modsup/oracle.hpp"

#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace modsup::oracle {
namespace {

void walk(const Automaton& a, int bound, bool marked_only, std::set<Word>& out) {
  if (!a.has_initial()) return;
  Word w;
  std::function<void(StateId)> rec = [&](StateId q) {
    if (!marked_only || a.marked(q)) out.insert(w);
    if (static_cast<int>(w.size()) >= bound) return;
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId r = a.next(q, e);
      if (r == kNoState) continue;
      w.push_back(a.events()[e]);
      rec(r);
      w.pop_back();
    }
  };
  rec(a.initial());
}

std::set<Word> prefixes(const std::set<Word>& strings) {
  std::set<Word> out;
  for (const auto& w : strings)
    for (std::size_t k = 0; k <= w.size(); ++k) out.insert(Word(w.begin(), w.begin() + k));
  return out;
}

bool has_prefix_in(const Word& w, const std::set<Word>& bad) {
  for (std::size_t k = 0; k <= w.size(); ++k)
    if (bad.count(Word(w.begin(), w.begin() + k))) return true;
  return false;
}

using BadPrefix = std::function<bool(const Word& t, const std::set<Word>& closed)>;

BoundedLanguage filter_to_fixpoint(const BoundedLanguage& spec, const BadPrefix& is_bad) {
  BoundedLanguage out = spec;
  for (;;) {
    const std::set<Word> closed = prefixes(out.strings);
    std::set<Word> bad;
    for (const auto& t : closed)
      if (is_bad(t, closed)) bad.insert(t);
    if (bad.empty()) return out;
    std::set<Word> kept;
    for (const auto& w : out.strings)
      if (!has_prefix_in(w, bad)) kept.insert(w);
    out.strings = std::move(kept);
  }
}

BadPrefix normality_violation(const BoundedLanguage& plant, const EventSet& observable) {
  auto classes = std::make_shared<std::map<Word, std::vector<Word>>>();
  for (const auto& u : plant.strings) (*classes)[project_word(u, observable)].push_back(u);
  return [classes, observable](const Word& t, const std::set<Word>& closed) {
    auto it = classes->find(project_word(t, observable));
    if (it == classes->end()) return false;
    for (const auto& u : it->second)
      if (!closed.count(u)) return true;
    return false;
  };
}

BadPrefix controllability_violation(const BoundedLanguage& plant, const EventSet& uncontrollable) {
  return [&plant, uncontrollable](const Word& t, const std::set<Word>& closed) {
    for (const auto& sigma : uncontrollable) {
      Word ts = t;
      ts.push_back(sigma);
      if (plant.contains(ts) && !closed.count(ts)) return true;
    }
    return false;
  };
}

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

}  // namespace

BoundedLanguage marked_slice(const Automaton& a, int bound) {
  BoundedLanguage l;
  l.bound = bound;
  l.alphabet = a.alphabet();
  walk(a, bound, true, l.strings);
  return l;
}

BoundedLanguage generated_slice(const Automaton& a, int bound) {
  BoundedLanguage l;
  l.bound = bound;
  l.alphabet = a.alphabet();
  l.prefix_closed = true;
  walk(a, bound, false, l.strings);
  return l;
}

BoundedLanguage closure(const BoundedLanguage& l) {
  BoundedLanguage out = l;
  out.strings = prefixes(l.strings);
  out.prefix_closed = true;
  return out;
}

BoundedLanguage oracle_sup_n(const BoundedLanguage& spec, const BoundedLanguage& plant,
                             const EventSet& observable) {
  return filter_to_fixpoint(spec, normality_violation(plant, observable));
}

BoundedLanguage oracle_sup_c(const BoundedLanguage& spec, const BoundedLanguage& plant,
                             const EventSet& uncontrollable) {
  return filter_to_fixpoint(spec, controllability_violation(plant, uncontrollable));
}

BoundedLanguage oracle_sup_cn(const BoundedLanguage& spec, const BoundedLanguage& plant,
                              const EventSet& uncontrollable, const EventSet& observable) {
  BoundedLanguage current = spec;
  for (;;) {
    BoundedLanguage next = oracle_sup_n(oracle_sup_c(current, plant, uncontrollable), plant, observable);
    if (next.strings == current.strings) return next;
    current = std::move(next);
  }
}

BoundedLanguage compose(std::span<const BoundedLanguage> parts, int bound) {
  BoundedLanguage out;
  out.bound = bound;
  for (const auto& p : parts) out.alphabet = set_union(out.alphabet, p.alphabet);
  std::vector<std::set<Word>> closed;
  for (const auto& p : parts) closed.push_back(prefixes(p.strings));

  Word w;
  std::function<void()> rec = [&]() {
    bool member = true;
    for (const auto& p : parts)
      if (!p.contains(project_word(w, p.alphabet))) member = false;
    if (member) out.strings.insert(w);
    if (static_cast<int>(w.size()) >= bound) return;
    for (const auto& sigma : out.alphabet) {
      w.push_back(sigma);
      bool viable = true;
      for (std::size_t i = 0; i < parts.size() && viable; ++i)
        if (parts[i].alphabet.count(sigma) && !closed[i].count(project_word(w, parts[i].alphabet))) viable = false;
      if (viable) rec();
      w.pop_back();
    }
  };
  rec();
  out.prefix_closed = true;
  for (const auto& p : parts) out.prefix_closed = out.prefix_closed && p.prefix_closed;
  return out;
}

bool oracle_nonconflicting(std::span<const BoundedLanguage> parts, int bound) {
  std::vector<BoundedLanguage> closures;
  for (const auto& p : parts) closures.push_back(closure(p));
  const auto marked = compose(parts, bound);
  const auto generated = compose(std::span<const BoundedLanguage>(closures), bound);
  return prefixes(marked.strings) == generated.strings;
}

OracleVerdict oracle_moc(std::span<const BoundedLanguage> modules, const EventSet& observable, std::size_t i,
                         int bound, int witness_bound) {
  const BoundedLanguage l = compose(modules, witness_bound);
  const EventSet& local = modules[i].alphabet;
  const EventSet local_observable = set_intersection(local, observable);

  std::set<Word> local_strings;
  for (const auto& w : l.strings) {
    Word t = project_word(w, local);
    if (static_cast<int>(t.size()) <= bound) local_strings.insert(std::move(t));
  }
  for (const auto& s : l.strings) {
    if (static_cast<int>(s.size()) > bound) continue;
    const Word seen = project_word(project_word(s, local), local_observable);
    const Word observed = project_word(s, observable);
    for (const auto& t : local_strings) {
      if (project_word(t, local_observable) != seen) continue;
      bool found = false;
      for (const auto& s2 : l.strings)
        if (project_word(s2, observable) == observed && project_word(s2, local) == t) {
          found = true;
          break;
        }
      if (!found) return {false, {s, t}};
    }
  }
  return {};
}

OracleVerdict brute_observer(const Automaton& g, const EventSet& target, int bound) {
  const std::size_t n = g.state_count();
  // Observations of length <= bound readable from `from`, with the states each can end in.
  auto observations = [&](StateId from) {
    std::map<Word, std::set<StateId>> seen;
    std::vector<std::pair<StateId, Word>> stack{{from, {}}};
    seen[{}].insert(from);
    while (!stack.empty()) {
      auto [q, w] = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < g.event_count(); ++e) {
        const StateId t = g.next(q, e);
        if (t == kNoState) continue;
        Word x = w;
        if (target.count(g.events()[e])) {
          if (static_cast<int>(x.size()) == bound) continue;
          x.push_back(g.events()[e]);
        }
        if (seen[x].insert(t).second) stack.push_back({t, std::move(x)});
      }
    }
    return seen;
  };
  auto ends_marked = [&](const std::set<StateId>& states) {
    for (StateId q : states)
      if (g.marked(q)) return true;
    return false;
  };

  // s ranges over prefixes of marked strings: a marked state must stay reachable.
  std::vector<char> coreach(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (coreach[q]) continue;
      bool c = g.marked(q);
      for (std::size_t e = 0; e < g.event_count() && !c; ++e) {
        const StateId t = g.next(q, e);
        c = t != kNoState && coreach[t];
      }
      if (c) coreach[q] = changed = true;
    }
  }

  std::set<Word> images;
  for (const auto& [t, states] : observations(g.initial()))
    if (ends_marked(states)) images.insert(t);

  for (const auto& s : generated_slice(g, bound).strings) {
    const StateId q = g.run(s);
    if (!coreach[q]) continue;
    const Word seen = project_word(s, target);
    const auto from_q = observations(q);
    for (const auto& t : images) {
      if (!is_prefix(seen, t)) continue;
      const Word rest(t.begin() + static_cast<std::ptrdiff_t>(seen.size()), t.end());
      auto it = from_q.find(rest);
      if (it == from_q.end() || !ends_marked(it->second)) return {false, {s, t}};
    }
  }
  return {};
}

OracleVerdict brute_occ(const Automaton& l, const EventSet& target, const EventSet& uncontrollable, int bound) {
  for (const auto& s : generated_slice(l, bound).strings) {
    if (s.empty() || !target.count(s.back()) || !uncontrollable.count(s.back())) continue;
    for (std::size_t k = s.size() - 1; k-- > 0;) {
      if (target.count(s[k])) break;
      if (!uncontrollable.count(s[k])) return {false, {s}};
    }
  }
  return {};
}

OracleVerdict brute_lcc(const Automaton& l, const EventSet& target, const EventSet& uncontrollable, int bound,
                        int witness_bound) {
  const EventSet hidden = set_difference(l.alphabet(), target);
  const EventSet watched = set_intersection(target, uncontrollable);

  // Whether some u over `allowed` with |u| <= witness_bound gives s u e in L.
  auto reaches = [&](const Word& s, const Event& e, const EventSet& allowed) {
    Word w = s;
    std::function<bool(int)> rec = [&](int depth) {
      w.push_back(e);
      const bool hit = l.generates(w);
      w.pop_back();
      if (hit) return true;
      if (depth == witness_bound) return false;
      for (const auto& a : allowed) {
        w.push_back(a);
        const bool ok = l.generates(w) && rec(depth + 1);
        w.pop_back();
        if (ok) return true;
      }
      return false;
    };
    return rec(0);
  };
  // R(s)e ∈ R(L) is implied by the first disjunct failing, so it is not tested separately.
  for (const auto& s : generated_slice(l, bound).strings) {
    for (const auto& e : watched)
      if (reaches(s, e, hidden) && !reaches(s, e, set_intersection(hidden, uncontrollable)))
        return {false, {s, Word{e}}};
  }
  return {};
}

std::string dump(const BoundedLanguage& l) {
  std::ostringstream out;
  for (const auto& w : l.strings) out << word_to_string(w) << "\n";
  return out.str();
}

}  // namespace modsup::oracle
