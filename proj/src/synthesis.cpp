#include "modsup/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <utility>

#include "explorer.hpp"
#include "modsup/operations.hpp"

namespace modsup {
namespace {

using detail::Explorer;

constexpr int kMaxFixpointRounds = 1000;

// Shortest-path bookkeeping over an implicit product space.
template <typename Key>
class PathTree {
 public:
  explicit PathTree(Key root) : root_(root) { parent_.emplace(root, std::make_pair(root, Event{})); }

  bool visit(const Key& k, const Key& from, const Event& e) {
    return parent_.emplace(k, std::make_pair(from, e)).second;
  }

  Word word(Key k) const {
    Word w;
    while (k != root_) {
      const auto& [p, e] = parent_.at(k);
      w.push_back(e);
      k = p;
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  Key root_;
  std::map<Key, std::pair<Key, Event>> parent_;
};

struct ProductStates {
  Automaton automaton;
  std::vector<StateId> spec_state;
  std::vector<StateId> plant_state;
};

// Product of a spec recognizer with the plant, remembering component states.
ProductStates spec_plant_product(const Automaton& spec, const Automaton& plant) {
  ProductStates out{Automaton(spec.name(), spec.alphabet()), {}, {}};
  using Key = std::pair<StateId, StateId>;
  Explorer<Key> ex(out.automaton);
  auto intern = [&](const Key& k) {
    const auto before = out.automaton.state_count();
    const StateId id = ex.intern(k, spec.label(k.first) + "." + plant.label(k.second), spec.marked(k.first));
    if (out.automaton.state_count() != before) {
      out.spec_state.push_back(k.first);
      out.plant_state.push_back(k.second);
    }
    return id;
  };
  out.automaton.set_initial(intern({spec.initial(), plant.initial()}));
  while (!ex.empty()) {
    const Key k = ex.pop();
    const StateId from = ex.id(k);
    for (std::size_t e = 0; e < spec.event_count(); ++e) {
      const StateId ts = spec.next(k.first, e);
      const StateId tp = plant.next(k.second, e);
      if (ts == kNoState || tp == kNoState) continue;
      out.automaton.add_transition(from, e, intern({ts, tp}));
    }
  }
  return out;
}

// K ∖ P⁻¹P(L ∖ K̄)Σ*: drops every string having a prefix that looks like an
// escape from K̄ through the observation.
Automaton drop_observed_escapes(const Automaton& spec_trim, const Automaton& plant,
                                const ProjectionSpec& obs) {
  const Automaton escapes = difference(mark_all(plant), mark_all(spec_trim));
  const Automaton observer = project(escapes, obs);
  if (observer.marked(observer.initial())) return Automaton::empty(spec_trim.name(), spec_trim.alphabet());

  Automaton out(spec_trim.name(), spec_trim.alphabet());
  std::vector<std::size_t> obs_index(spec_trim.event_count(), static_cast<std::size_t>(-1));
  for (std::size_t e = 0; e < spec_trim.event_count(); ++e)
    if (auto i = observer.event_index(spec_trim.events()[e])) obs_index[e] = *i;

  using Key = std::pair<StateId, StateId>;  // second == kNoState: observation left P(L∖K̄)
  Explorer<Key> ex(out);
  auto label_of = [&](const Key& k) {
    return spec_trim.label(k.first) + (k.second == kNoState ? std::string(".-") : "." + observer.label(k.second));
  };
  const Key init{spec_trim.initial(), observer.initial()};
  out.set_initial(ex.intern(init, label_of(init), spec_trim.marked(init.first)));
  while (!ex.empty()) {
    const Key k = ex.pop();
    const StateId from = ex.id(k);
    for (std::size_t e = 0; e < spec_trim.event_count(); ++e) {
      const StateId ts = spec_trim.next(k.first, e);
      if (ts == kNoState) continue;
      StateId to = k.second;
      if (obs_index[e] != static_cast<std::size_t>(-1) && to != kNoState) to = observer.next(to, obs_index[e]);
      if (to != kNoState && observer.marked(to)) continue;
      const Key succ{ts, to};
      out.add_transition(from, e, ex.intern(succ, label_of(succ), spec_trim.marked(ts)));
    }
  }
  return out;
}

SynthesisProblem with_spec(const SynthesisProblem& p, Automaton spec) {
  return SynthesisProblem{std::move(spec), p.plant, p.uncontrollable, p.observation};
}

}  // namespace

SynthesisProblem make_problem(Automaton spec, Automaton plant, const EventTable& table) {
  if (spec.alphabet() != plant.alphabet())
    throw InvalidProblem("specification '" + spec.name() + "' and plant '" + plant.name() +
                         "' have different alphabets");
  const EventSet sigma = plant.alphabet();
  for (const auto& e : sigma)
    if (!table.contains(e)) throw InvalidProblem("event '" + e + "' has no attributes");
  ProjectionSpec obs(sigma, set_intersection(sigma, table.observable_events()));
  EventSet uc = set_intersection(sigma, table.uncontrollable_events());
  return SynthesisProblem{std::move(spec), std::move(plant), std::move(uc), std::move(obs)};
}

void validate(const SynthesisProblem& p) {
  const EventSet sigma = p.plant.alphabet();
  if (p.spec.alphabet() != sigma)
    throw InvalidProblem("specification '" + p.spec.name() + "' is not over the plant alphabet");
  if (p.observation.source() != sigma)
    throw InvalidProblem("observation source differs from the plant alphabet");
  if (!is_subset(p.uncontrollable, sigma))
    throw InvalidProblem("uncontrollable events outside the plant alphabet");
  if (!p.spec.has_initial() || !p.plant.has_initial())
    throw InvalidProblem("automaton without initial state");
  const auto sub = language_subset(p.spec, mark_all(p.plant));
  if (!sub.marked.holds)
    throw InvalidProblem("specification '" + p.spec.name() + "' is not contained in plant '" +
                         p.plant.name() + "': " + word_to_string(*sub.marked.witness));
}

PredicateResult is_controllable(const SynthesisProblem& p) {
  validate(p);
  if (marks_nothing(p.spec)) return {};
  const Automaton k = trim(p.spec);
  std::vector<std::size_t> uc;
  for (std::size_t e = 0; e < k.event_count(); ++e)
    if (p.uncontrollable.count(k.events()[e])) uc.push_back(e);

  using Key = std::pair<StateId, StateId>;
  const Key root{k.initial(), p.plant.initial()};
  PathTree<Key> tree(root);
  std::deque<Key> queue{root};
  while (!queue.empty()) {
    const Key s = queue.front();
    queue.pop_front();
    for (std::size_t e : uc) {
      if (p.plant.next(s.second, e) != kNoState && k.next(s.first, e) == kNoState) {
        Word w = tree.word(s);
        w.push_back(k.events()[e]);
        return {false, std::move(w)};
      }
    }
    for (std::size_t e = 0; e < k.event_count(); ++e) {
      const Key t{k.next(s.first, e), p.plant.next(s.second, e)};
      if (t.first == kNoState || t.second == kNoState) continue;
      if (tree.visit(t, s, k.events()[e])) queue.push_back(t);
    }
  }
  return {};
}

PredicateResult is_normal(const SynthesisProblem& p) {
  validate(p);
  if (marks_nothing(p.spec)) return {};
  const Automaton k = trim(p.spec);
  const Automaton observed = project(k, p.observation);
  const Automaton& g = p.plant;

  using Key = std::tuple<StateId, StateId, StateId>;  // plant, observer, spec (kNoState: left K̄)
  const Key root{g.initial(), observed.initial(), k.initial()};
  PathTree<Key> tree(root);
  std::deque<Key> queue{root};
  while (!queue.empty()) {
    const Key s = queue.front();
    queue.pop_front();
    const auto [qg, qo, qk] = s;
    if (qk == kNoState) return {false, tree.word(s)};
    for (std::size_t e = 0; e < g.event_count(); ++e) {
      const StateId tg = g.next(qg, e);
      if (tg == kNoState) continue;
      const Event& ev = g.events()[e];
      StateId to = qo;
      if (p.observation.target().count(ev)) {
        to = observed.next(qo, ev);
        if (to == kNoState) continue;
      }
      const Key t{tg, to, k.next(qk, e)};
      if (tree.visit(t, s, ev)) queue.push_back(t);
    }
  }
  return {};
}

Automaton sup_n(const SynthesisProblem& p) {
  validate(p);
  const std::string name = "supN(" + p.spec.name() + ")";
  if (marks_nothing(p.spec)) return Automaton::empty(name, p.spec.alphabet());
  Automaton current = trim(p.spec);
  if (is_prefix_closed(current)) return renamed(trim(drop_observed_escapes(current, p.plant, p.observation)), name);
  for (int round = 0; round < kMaxFixpointRounds; ++round) {
    Automaton next = minimize(trim(drop_observed_escapes(current, p.plant, p.observation)));
    if (language_equal(next, current).marked.holds) return renamed(std::move(next), name);
    current = std::move(next);
  }
  throw Error("sup_n: fixpoint did not converge");
}

Automaton sup_c(const SynthesisProblem& p) {
  validate(p);
  const std::string name = "supC(" + p.spec.name() + ")";
  if (marks_nothing(p.spec)) return Automaton::empty(name, p.spec.alphabet());
  const ProductStates prod = spec_plant_product(trim(p.spec), p.plant);
  const Automaton& h = prod.automaton;
  std::vector<std::size_t> uc;
  for (std::size_t e = 0; e < h.event_count(); ++e)
    if (p.uncontrollable.count(h.events()[e])) uc.push_back(e);

  std::vector<char> keep(h.state_count(), 1);
  std::vector<std::vector<StateId>> preds(h.state_count());
  for (StateId s = 0; s < h.state_count(); ++s)
    for (std::size_t e = 0; e < h.event_count(); ++e)
      if (const StateId t = h.next(s, e); t != kNoState) preds[t].push_back(s);

  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < h.state_count(); ++s) {
      if (!keep[s]) continue;
      for (std::size_t e : uc) {
        if (p.plant.next(prod.plant_state[s], e) == kNoState) continue;
        const StateId t = h.next(s, e);
        if (t == kNoState || !keep[t]) {
          keep[s] = 0;
          changed = true;
          break;
        }
      }
    }
    std::vector<char> co(h.state_count(), 0);
    std::deque<StateId> queue;
    for (StateId s = 0; s < h.state_count(); ++s)
      if (keep[s] && h.marked(s)) {
        co[s] = 1;
        queue.push_back(s);
      }
    while (!queue.empty()) {
      const StateId t = queue.front();
      queue.pop_front();
      for (StateId s : preds[t])
        if (keep[s] && !co[s]) {
          co[s] = 1;
          queue.push_back(s);
        }
    }
    for (StateId s = 0; s < h.state_count(); ++s)
      if (keep[s] && !co[s]) {
        keep[s] = 0;
        changed = true;
      }
    if (!keep[h.initial()]) return Automaton::empty(name, h.alphabet());
  }
  return renamed(restrict_states(h, keep), name);
}

Automaton sup_cn(const SynthesisProblem& p) {
  validate(p);
  const std::string name = "supCN(" + p.spec.name() + ")";
  if (marks_nothing(p.spec)) return Automaton::empty(name, p.spec.alphabet());
  Automaton current = minimize(trim(p.spec));
  for (int round = 0; round < kMaxFixpointRounds; ++round) {
    const Automaton controllable = sup_c(with_spec(p, current));
    Automaton next = minimize(trim(sup_n(with_spec(p, controllable))));
    if (language_equal(next, current).marked.holds) return renamed(std::move(next), name);
    current = std::move(next);
  }
  throw Error("sup_cn: fixpoint did not converge");
}

std::string to_string(SynthesisKind kind) {
  switch (kind) {
    case SynthesisKind::Normal: return "normal";
    case SynthesisKind::Controllable: return "controllable";
    case SynthesisKind::ControllableNormal: return "controllable-normal";
  }
  return "?";
}

SynthesisKind parse_synthesis_kind(const std::string& text) {
  if (text == "normal") return SynthesisKind::Normal;
  if (text == "controllable") return SynthesisKind::Controllable;
  if (text == "controllable-normal") return SynthesisKind::ControllableNormal;
  throw Error("unknown synthesis kind '" + text + "'");
}

Automaton synthesize(SynthesisKind kind, const SynthesisProblem& p) {
  switch (kind) {
    case SynthesisKind::Normal: return sup_n(p);
    case SynthesisKind::Controllable: return sup_c(p);
    case SynthesisKind::ControllableNormal: return sup_cn(p);
  }
  throw Error("unknown synthesis kind");
}

ClosedLoop closed_loop(const Automaton& supervisor, const Automaton& plant) {
  Automaton loop = parallel(supervisor, plant);
  const bool nb = is_nonblocking(loop);
  return {std::move(loop), nb};
}

}  // namespace modsup
