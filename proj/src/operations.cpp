#include "modsup/operations.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <utility>

#include "explorer.hpp"

namespace modsup {
namespace {

using detail::Explorer;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void require_same_alphabet(const Automaton& a, const Automaton& b, const char* op) {
  if (a.events() != b.events())
    throw AlphabetMismatch(std::string(op) + ": alphabets differ ('" + a.name() + "' over {" +
                           join_events(a.alphabet()) + "}, '" + b.name() + "' over {" +
                           join_events(b.alphabet()) + "})");
}

std::vector<std::vector<std::pair<std::size_t, StateId>>> reverse_edges(const Automaton& a) {
  std::vector<std::vector<std::pair<std::size_t, StateId>>> rev(a.state_count());
  for (StateId s = 0; s < a.state_count(); ++s)
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId t = a.next(s, e);
      if (t != kNoState) rev[t].emplace_back(e, s);
    }
  return rev;
}

}  // namespace

std::string capped_label(const std::string& full, const LabelOptions& opts) {
  if (full.size() <= opts.cap) return full;
  char buf[24];
  std::snprintf(buf, sizeof buf, "#%016llx", static_cast<unsigned long long>(fnv1a(full)));
  const std::size_t keep = opts.cap > 17 ? opts.cap - 17 : 0;
  return full.substr(0, keep) + buf;
}

Automaton renamed(Automaton a, std::string name) {
  a.set_name(std::move(name));
  return a;
}

Automaton restrict_states(const Automaton& a, const std::vector<char>& keep) {
  if (!a.has_initial() || !keep.at(a.initial())) return Automaton::empty(a.name(), a.alphabet());
  Automaton out(a.name(), a.alphabet());
  std::vector<StateId> map(a.state_count(), kNoState);
  std::deque<StateId> queue{a.initial()};
  map[a.initial()] = out.add_state(a.label(a.initial()), a.marked(a.initial()));
  out.set_initial(0);
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId t = a.next(s, e);
      if (t == kNoState || !keep[t]) continue;
      if (map[t] == kNoState) {
        map[t] = out.add_state(a.label(t), a.marked(t));
        queue.push_back(t);
      }
      out.add_transition(map[s], e, map[t]);
    }
  }
  return out;
}

Automaton accessible(const Automaton& a) {
  return restrict_states(a, std::vector<char>(a.state_count(), 1));
}

std::vector<char> coreachable_states(const Automaton& a) {
  std::vector<char> co(a.state_count(), 0);
  std::deque<StateId> queue;
  for (StateId s = 0; s < a.state_count(); ++s)
    if (a.marked(s)) {
      co[s] = 1;
      queue.push_back(s);
    }
  const auto rev = reverse_edges(a);
  while (!queue.empty()) {
    const StateId t = queue.front();
    queue.pop_front();
    for (const auto& [e, s] : rev[t])
      if (!co[s]) {
        co[s] = 1;
        queue.push_back(s);
      }
  }
  return co;
}

Automaton trim(const Automaton& a) { return restrict_states(a, coreachable_states(a)); }

std::vector<std::optional<Word>> access_words(const Automaton& a) {
  std::vector<std::optional<Word>> words(a.state_count());
  if (!a.has_initial()) return words;
  words[a.initial()] = Word{};
  std::deque<StateId> queue{a.initial()};
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId t = a.next(s, e);
      if (t == kNoState || words[t]) continue;
      Word w = *words[s];
      w.push_back(a.events()[e]);
      words[t] = std::move(w);
      queue.push_back(t);
    }
  }
  return words;
}

Automaton parallel(std::span<const Automaton> parts, const LabelOptions& opts) {
  if (parts.empty()) throw Error("parallel: no automata given");
  EventSet alphabet;
  std::string name;
  for (const auto& p : parts) {
    alphabet = set_union(alphabet, p.alphabet());
    if (!name.empty()) name += "||";
    name += p.name();
  }
  Automaton out(name, alphabet);
  const auto& events = out.events();
  // local[j][e]: index of union event e in part j, or npos when not shared.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> local(parts.size(), std::vector<std::size_t>(events.size()));
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (std::size_t e = 0; e < events.size(); ++e)
      local[j][e] = parts[j].event_index(events[e]).value_or(npos);

  using Key = std::vector<StateId>;
  auto label_of = [&](const Key& k) {
    std::string l;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (j) l += '.';
      l += parts[j].label(k[j]);
    }
    return capped_label(l, opts);
  };
  auto marked_of = [&](const Key& k) {
    for (std::size_t j = 0; j < k.size(); ++j)
      if (!parts[j].marked(k[j])) return false;
    return true;
  };

  Explorer<Key> ex(out);
  Key init(parts.size());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!parts[j].has_initial()) throw Error("parallel: automaton '" + parts[j].name() + "' has no initial state");
    init[j] = parts[j].initial();
  }
  out.set_initial(ex.intern(init, label_of(init), marked_of(init)));
  while (!ex.empty()) {
    const Key k = ex.pop();
    const StateId from = ex.id(k);
    for (std::size_t e = 0; e < events.size(); ++e) {
      Key succ = k;
      bool ok = true;
      for (std::size_t j = 0; j < parts.size() && ok; ++j) {
        if (local[j][e] == npos) continue;
        succ[j] = parts[j].next(k[j], local[j][e]);
        ok = succ[j] != kNoState;
      }
      if (!ok) continue;
      out.add_transition(from, e, ex.intern(succ, label_of(succ), marked_of(succ)));
    }
  }
  return out;
}

Automaton parallel(const Automaton& a, const Automaton& b, const LabelOptions& opts) {
  const Automaton parts[] = {a, b};
  return parallel(std::span<const Automaton>(parts), opts);
}

Automaton project(const Automaton& a, const ProjectionSpec& p, const LabelOptions& opts) {
  if (p.source() != a.alphabet())
    throw AlphabetMismatch("project: source {" + join_events(p.source()) +
                           "} differs from alphabet of '" + a.name() + "'");
  Automaton out(a.name(), p.target());
  std::vector<char> erased(a.event_count());
  std::vector<std::size_t> to_source(out.event_count());
  for (std::size_t e = 0; e < a.event_count(); ++e) erased[e] = !p.target().count(a.events()[e]);
  for (std::size_t e = 0; e < out.event_count(); ++e) to_source[e] = *a.event_index(out.events()[e]);

  using Key = std::vector<StateId>;
  auto closure = [&](Key seeds) {
    std::vector<char> seen(a.state_count(), 0);
    std::deque<StateId> queue;
    for (StateId s : seeds)
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
    while (!queue.empty()) {
      const StateId s = queue.front();
      queue.pop_front();
      for (std::size_t e = 0; e < a.event_count(); ++e) {
        if (!erased[e]) continue;
        const StateId t = a.next(s, e);
        if (t != kNoState && !seen[t]) {
          seen[t] = 1;
          queue.push_back(t);
        }
      }
    }
    Key out_key;
    for (StateId s = 0; s < a.state_count(); ++s)
      if (seen[s]) out_key.push_back(s);
    return out_key;
  };
  auto label_of = [&](const Key& k) {
    std::string l = "{";
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (j) l += ',';
      l += a.label(k[j]);
    }
    return capped_label(l + "}", opts);
  };
  auto marked_of = [&](const Key& k) {
    return std::any_of(k.begin(), k.end(), [&](StateId s) { return a.marked(s); });
  };

  if (!a.has_initial()) throw Error("project: automaton '" + a.name() + "' has no initial state");
  Explorer<Key> ex(out);
  const Key init = closure({a.initial()});
  out.set_initial(ex.intern(init, label_of(init), marked_of(init)));
  while (!ex.empty()) {
    const Key k = ex.pop();
    const StateId from = ex.id(k);
    for (std::size_t e = 0; e < out.event_count(); ++e) {
      Key seeds;
      for (StateId s : k) {
        const StateId t = a.next(s, to_source[e]);
        if (t != kNoState) seeds.push_back(t);
      }
      if (seeds.empty()) continue;
      const Key succ = closure(std::move(seeds));
      out.add_transition(from, e, ex.intern(succ, label_of(succ), marked_of(succ)));
    }
  }
  return out;
}

Automaton project_onto(const Automaton& a, const EventSet& target, const LabelOptions& opts) {
  return project(a, ProjectionSpec(a.alphabet(), set_intersection(target, a.alphabet())), opts);
}

Automaton inverse_project(const Automaton& a, const ProjectionSpec& p) {
  if (p.target() != a.alphabet())
    throw AlphabetMismatch("inverse_project: target {" + join_events(p.target()) +
                           "} differs from alphabet of '" + a.name() + "'");
  const Automaton src = accessible(a);
  Automaton out(a.name(), p.source());
  for (StateId s = 0; s < src.state_count(); ++s) out.add_state(src.label(s), src.marked(s));
  out.set_initial(src.initial());
  for (std::size_t e = 0; e < out.event_count(); ++e) {
    const auto local = src.event_index(out.events()[e]);
    for (StateId s = 0; s < src.state_count(); ++s) {
      if (local) {
        const StateId t = src.next(s, *local);
        if (t != kNoState) out.add_transition(s, e, t);
      } else {
        out.add_transition(s, e, s);
      }
    }
  }
  return out;
}

Automaton difference(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b, "difference");
  Automaton out(a.name() + "-" + b.name(), a.alphabet());
  using Key = std::pair<StateId, StateId>;  // second == kNoState is the completion sink
  auto marked_of = [&](const Key& k) {
    return a.marked(k.first) && !(k.second != kNoState && b.marked(k.second));
  };
  auto label_of = [&](const Key& k) {
    return a.label(k.first) + "." + (k.second == kNoState ? std::string("sink") : b.label(k.second));
  };
  Explorer<Key> ex(out);
  const Key init{a.initial(), b.initial()};
  out.set_initial(ex.intern(init, label_of(init), marked_of(init)));
  while (!ex.empty()) {
    const Key k = ex.pop();
    const StateId from = ex.id(k);
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId ta = a.next(k.first, e);
      if (ta == kNoState) continue;
      const StateId tb = k.second == kNoState ? kNoState : b.next(k.second, e);
      const Key succ{ta, tb};
      out.add_transition(from, e, ex.intern(succ, label_of(succ), marked_of(succ)));
    }
  }
  return out;
}

Automaton mark_all(const Automaton& a) {
  Automaton out = accessible(a);
  for (StateId s = 0; s < out.state_count(); ++s) out.set_marked(s, true);
  return out;
}

Automaton prefix_closure(const Automaton& a) {
  Automaton out = accessible(a);
  const auto co = coreachable_states(out);
  for (StateId s = 0; s < out.state_count(); ++s) out.set_marked(s, co[s] != 0);
  return out;
}

namespace {

enum class Relation { Equal, Subset };

LanguageComparison compare(const Automaton& a, const Automaton& b, Relation rel) {
  require_same_alphabet(a, b, rel == Relation::Equal ? "language_equal" : "language_subset");
  LanguageComparison result;
  using Key = std::pair<StateId, StateId>;
  std::map<Key, std::pair<Key, std::size_t>> parent;
  std::deque<Key> queue;
  const Key init{a.initial(), b.initial()};
  parent.emplace(init, std::make_pair(init, std::size_t{0}));
  queue.push_back(init);

  auto word_of = [&](Key k) {
    Word w;
    while (k != init) {
      const auto& [p, e] = parent.at(k);
      w.push_back(a.events()[e]);
      k = p;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  auto marked_in = [](const Automaton& x, StateId s) { return s != kNoState && x.marked(s); };

  while (!queue.empty()) {
    const Key k = queue.front();
    queue.pop_front();
    const bool in_a = k.first != kNoState, in_b = k.second != kNoState;
    const bool gen_bad = rel == Relation::Equal ? in_a != in_b : in_a && !in_b;
    const bool ma = marked_in(a, k.first), mb = marked_in(b, k.second);
    const bool mark_bad = rel == Relation::Equal ? ma != mb : ma && !mb;
    if (gen_bad && result.generated.holds) result.generated = {false, word_of(k)};
    if (mark_bad && result.marked.holds) result.marked = {false, word_of(k)};
    if (!result.generated.holds && !result.marked.holds) break;
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId ta = in_a ? a.next(k.first, e) : kNoState;
      const StateId tb = in_b ? b.next(k.second, e) : kNoState;
      if (ta == kNoState && tb == kNoState) continue;
      if (rel == Relation::Subset && ta == kNoState) continue;
      const Key succ{ta, tb};
      if (parent.emplace(succ, std::make_pair(k, e)).second) queue.push_back(succ);
    }
  }
  return result;
}

}  // namespace

LanguageComparison language_equal(const Automaton& a, const Automaton& b) {
  return compare(a, b, Relation::Equal);
}

LanguageComparison language_subset(const Automaton& a, const Automaton& b) {
  return compare(a, b, Relation::Subset);
}

bool is_nonblocking(const Automaton& a) {
  const Automaton acc = accessible(a);
  const auto co = coreachable_states(acc);
  return std::all_of(co.begin(), co.end(), [](char c) { return c != 0; });
}

bool is_prefix_closed(const Automaton& a) {
  return language_equal(prefix_closure(a), a).marked.holds;
}

bool marks_nothing(const Automaton& a) {
  const Automaton acc = accessible(a);
  for (StateId s = 0; s < acc.state_count(); ++s)
    if (acc.marked(s)) return false;
  return true;
}

std::optional<Word> find_conflict(std::span<const Automaton> parts) {
  if (parts.empty()) return std::nullopt;
  // closure(∅) = ∅ and ∅ ∥ X = ∅, so an empty input makes both sides empty.
  for (const auto& p : parts)
    if (marks_nothing(p)) return std::nullopt;
  std::vector<Automaton> trimmed;
  trimmed.reserve(parts.size());
  for (const auto& p : parts) trimmed.push_back(trim(p));
  const Automaton composed = parallel(std::span<const Automaton>(trimmed));
  const auto co = coreachable_states(composed);
  const auto words = access_words(composed);
  std::optional<Word> best;
  for (StateId s = 0; s < composed.state_count(); ++s) {
    if (co[s] || !words[s]) continue;
    if (!best || words[s]->size() < best->size() ||
        (words[s]->size() == best->size() && *words[s] < *best))
      best = words[s];
  }
  return best;
}

bool is_nonconflicting(std::span<const Automaton> parts) { return !find_conflict(parts); }

EnumeratedLanguage enumerate_language(const Automaton& a, std::size_t bound) {
  EnumeratedLanguage out;
  if (!a.has_initial()) return out;
  Word w;
  std::function<void(StateId)> walk = [&](StateId s) {
    out.generated.insert(w);
    if (a.marked(s)) out.marked.insert(w);
    if (w.size() == bound) return;
    for (std::size_t e = 0; e < a.event_count(); ++e) {
      const StateId t = a.next(s, e);
      if (t == kNoState) continue;
      w.push_back(a.events()[e]);
      walk(t);
      w.pop_back();
    }
  };
  walk(a.initial());
  return out;
}

Automaton minimize(const Automaton& input) {
  const Automaton a = accessible(input);
  const std::size_t n = a.state_count();
  const std::size_t m = a.event_count();
  std::vector<std::size_t> block(n);
  for (StateId s = 0; s < n; ++s) block[s] = a.marked(s) ? 1 : 0;
  std::size_t blocks = 0;
  for (;;) {
    // Signature: own block plus successor blocks; a missing transition is
    // its own class, which never coincides with a real state.
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next_block(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<std::size_t> sig;
      sig.reserve(m + 1);
      sig.push_back(block[s]);
      for (std::size_t e = 0; e < m; ++e) {
        const StateId t = a.next(s, e);
        sig.push_back(t == kNoState ? static_cast<std::size_t>(-1) : block[t]);
      }
      next_block[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    const std::size_t count = ids.size();
    block = std::move(next_block);
    if (count == blocks) break;
    blocks = count;
  }
  Automaton quotient(a.name(), a.alphabet());
  std::vector<StateId> rep(blocks, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (rep[block[s]] == kNoState) rep[block[s]] = s;
  for (std::size_t b = 0; b < blocks; ++b) quotient.add_state(a.label(rep[b]), a.marked(rep[b]));
  quotient.set_initial(static_cast<StateId>(block[a.initial()]));
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t e = 0; e < m; ++e) {
      const StateId t = a.next(rep[b], e);
      if (t != kNoState) quotient.add_transition(static_cast<StateId>(b), e, static_cast<StateId>(block[t]));
    }
  return accessible(quotient);
}

}  // namespace modsup
