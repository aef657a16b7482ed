#include "modsup/checks.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "modsup/operations.hpp"

namespace modsup {

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::HoldsUpToBound: return "holds-up-to-bound";
    case Status::Fails: return "fails";
    case Status::NotRun: return "not-run";
  }
  return "?";
}

Status parse_status(const std::string& text) {
  if (text == "holds") return Status::Holds;
  if (text == "holds-up-to-bound") return Status::HoldsUpToBound;
  if (text == "fails") return Status::Fails;
  if (text == "not-run") return Status::NotRun;
  throw Error("unknown verdict status '" + text + "'");
}

CheckVerdict holds(std::string name, std::string note) {
  CheckVerdict v;
  v.name = std::move(name);
  v.status = Status::Holds;
  v.note = std::move(note);
  return v;
}

CheckVerdict fails(std::string name, std::vector<std::string> witness, std::string note) {
  CheckVerdict v;
  v.name = std::move(name);
  v.status = Status::Fails;
  v.witness = std::move(witness);
  v.note = std::move(note);
  return v;
}

std::vector<Automaton> ModularSystem::plants() const {
  std::vector<Automaton> out;
  out.reserve(modules.size());
  for (const auto& m : modules) out.push_back(m.plant);
  return out;
}

std::vector<EventSet> ModularSystem::alphabets() const {
  std::vector<EventSet> out;
  out.reserve(modules.size());
  for (const auto& m : modules) out.push_back(m.plant.alphabet());
  return out;
}

EventSet ModularSystem::alphabet() const {
  EventSet out;
  for (const auto& m : modules) out = set_union(out, m.plant.alphabet());
  return out;
}

bool ModularSystem::has_local_specs() const {
  return !modules.empty() &&
         std::all_of(modules.begin(), modules.end(), [](const Module& m) { return m.spec.has_value(); });
}

void ModularSystem::validate() const {
  if (modules.empty()) throw Error("modular system has no modules");
  const bool any_local = std::any_of(modules.begin(), modules.end(), [](const Module& m) { return m.spec.has_value(); });
  if (any_local && !has_local_specs()) throw Error("some modules lack a local specification");
  if (any_local == global_spec.has_value())
    throw Error("exactly one of per-module specifications or a global specification is required");
  for (const auto& e : alphabet())
    if (!table.contains(e)) throw Error("event '" + e + "' has no attributes");
  for (const auto& m : modules) {
    if (!m.spec) continue;
    if (m.spec->alphabet() != m.plant.alphabet())
      throw Error("specification '" + m.spec->name() + "' is not over the alphabet of plant '" + m.plant.name() + "'");
  }
  if (global_spec && global_spec->alphabet() != alphabet())
    throw Error("global specification '" + global_spec->name() + "' is not over the global alphabet");
  if (kappa && !is_subset(*kappa, alphabet())) throw Error("kappa contains events outside the global alphabet");
}

EventSet shared_alphabet(std::span<const EventSet> alphabets) {
  std::map<Event, int> count;
  for (const auto& a : alphabets)
    for (const auto& e : a) ++count[e];
  EventSet out;
  for (const auto& [e, c] : count)
    if (c >= 2) out.insert(e);
  return out;
}

EventSet shared_alphabet(const ModularSystem& m) {
  const auto alphabets = m.alphabets();
  return shared_alphabet(std::span<const EventSet>(alphabets));
}

CheckVerdict check_shared_observable(const ModularSystem& m) {
  const EventSet offending = set_difference(shared_alphabet(m), m.table.observable_events());
  if (offending.empty()) return holds("shared-observable");
  return fails("shared-observable", {*offending.begin()}, "unobservable shared events: " + join_events(offending));
}

CheckVerdict check_shared_controllable(const ModularSystem& m) {
  const EventSet ok = set_intersection(m.table.observable_events(), m.table.controllable_events());
  const EventSet offending = set_difference(shared_alphabet(m), ok);
  if (offending.empty()) return holds("shared-controllable-observable");
  return fails("shared-controllable-observable", {*offending.begin()},
               "shared events not controllable and observable: " + join_events(offending));
}

CheckVerdict check_observability_agreement(std::span<const LoadedAutomaton> files) {
  std::map<Event, std::pair<bool, const LoadedAutomaton*>> first;
  for (const auto& f : files)
    for (const auto& [e, attrs] : f.declared.entries()) {
      auto [it, inserted] = first.emplace(e, std::make_pair(attrs.observable, &f));
      if (!inserted && it->second.first != attrs.observable)
        return fails("observability-agreement", {e, it->second.second->source, f.source},
                     "event '" + e + "' has different observability in '" + it->second.second->source + "' and '" +
                         f.source + "'");
    }
  return holds("observability-agreement");
}

CheckVerdict check_observability_agreement(const ModularSystem&) {
  return holds("observability-agreement", "single event table");
}

EventTable merge_declarations(std::span<const LoadedAutomaton> files) {
  const CheckVerdict obs = check_observability_agreement(files);
  if (obs.failed()) throw Error(obs.note);
  EventTable table;
  std::map<Event, const LoadedAutomaton*> origin;
  for (const auto& f : files)
    for (const auto& [e, attrs] : f.declared.entries()) {
      if (table.contains(e) && table.attributes(e) != attrs)
        throw Error("event '" + e + "' has different controllability in '" + origin[e]->source + "' and '" + f.source + "'");
      table.set(e, attrs);
      origin.emplace(e, &f);
    }
  return table;
}

int default_moc_bound(std::size_t product_states) {
  return static_cast<int>(std::min<std::size_t>(12, 2 * product_states));
}

namespace {

// Number of strings of length <= bound in L(a), saturating at `cap`.
std::size_t count_words(const Automaton& a, int bound, std::size_t cap) {
  std::vector<std::size_t> at(a.state_count(), 0);
  at[a.initial()] = 1;
  std::size_t total = 1;
  for (int len = 1; len <= bound && total <= cap; ++len) {
    std::vector<std::size_t> next(a.state_count(), 0);
    for (StateId q = 0; q < a.state_count(); ++q) {
      if (!at[q]) continue;
      for (std::size_t e = 0; e < a.event_count(); ++e) {
        const StateId t = a.next(q, e);
        if (t != kNoState) next[t] = std::min(cap + 1, next[t] + at[q]);
      }
    }
    for (auto c : next) total = std::min(cap + 1, total + c);
    at = std::move(next);
  }
  return total;
}

}  // namespace

int affordable_moc_bound(std::span<const Automaton> plants, std::size_t i, int bound, std::size_t budget) {
  if (i >= plants.size()) throw Error("module index out of range");
  const Automaton l = parallel(plants);
  const Automaton pil = project_onto(l, plants[i].alphabet());
  int b = std::max(bound, 0);
  while (b > 0 && count_words(l, b, budget) + count_words(pil, b, budget) > budget) --b;
  return b;
}

namespace {

// Is there s' in L with P(s') = obs and P_i(s') = local?
bool has_moc_witness(const Automaton& l, const EventSet& observable, const EventSet& local, const Word& obs,
                     const Word& loc) {
  const std::size_t m = l.event_count();
  std::vector<char> in_obs(m), in_loc(m);
  for (std::size_t e = 0; e < m; ++e) {
    in_obs[e] = observable.count(l.events()[e]) != 0;
    in_loc[e] = local.count(l.events()[e]) != 0;
  }
  using Key = std::tuple<StateId, std::size_t, std::size_t>;
  std::set<Key> seen;
  std::deque<Key> queue;
  const Key root{l.initial(), 0, 0};
  seen.insert(root);
  queue.push_back(root);
  while (!queue.empty()) {
    const auto [q, i, j] = queue.front();
    queue.pop_front();
    if (i == obs.size() && j == loc.size()) return true;
    for (std::size_t e = 0; e < m; ++e) {
      const StateId t = l.next(q, e);
      if (t == kNoState) continue;
      const Event& ev = l.events()[e];
      std::size_t ni = i, nj = j;
      if (in_obs[e]) {
        if (i >= obs.size() || obs[i] != ev) continue;
        ++ni;
      }
      if (in_loc[e]) {
        if (j >= loc.size() || loc[j] != ev) continue;
        ++nj;
      }
      const Key k{t, ni, nj};
      if (seen.insert(k).second) queue.push_back(k);
    }
  }
  return false;
}

bool shorter(const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

}  // namespace

CheckVerdict check_moc_bounded(std::span<const Automaton> plants, const EventSet& observable, std::size_t i,
                               int bound) {
  if (bound < 0) throw Error("MOC bound must be nonnegative");
  if (i >= plants.size()) throw Error("module index out of range");
  const std::string name = "moc." + std::to_string(i + 1);
  CheckVerdict v;
  v.name = name;
  v.bound = bound;
  const Automaton l = parallel(plants);
  const EventSet local = plants[i].alphabet();
  const EventSet obs = set_intersection(observable, l.alphabet());
  const EventSet local_obs = set_intersection(local, obs);

  // s matters only through P(s); keep one shortest representative per observation.
  std::map<Word, Word> by_observation;
  for (const auto& s : enumerate_language(l, static_cast<std::size_t>(bound)).generated) {
    const Word o = project_word(s, obs);
    auto it = by_observation.find(o);
    if (it == by_observation.end() || shorter(s, it->second)) by_observation[o] = s;
  }
  std::map<Word, std::vector<Word>> local_by_key;
  const Automaton pil = project_onto(l, local);
  for (const auto& t : enumerate_language(pil, static_cast<std::size_t>(bound)).generated)
    local_by_key[project_word(t, local_obs)].push_back(t);

  for (const auto& [o, s] : by_observation) {
    auto it = local_by_key.find(project_word(o, local_obs));
    if (it == local_by_key.end()) continue;
    for (const auto& t : it->second)
      if (!has_moc_witness(l, obs, local, o, t)) {
        v.status = Status::Fails;
        v.witness = {"s=" + word_to_string(s), "t'=" + word_to_string(t)};
        v.note = "no s' in L with P(s')=P(s) and P_i(s')=t'";
        return v;
      }
  }
  v.status = Status::HoldsUpToBound;
  return v;
}

CheckVerdict check_moc_bounded(const ModularSystem& m, std::size_t i, int bound) {
  const auto plants = m.plants();
  return check_moc_bounded(std::span<const Automaton>(plants), m.table.observable_events(), i, bound);
}

CheckVerdict is_observer(const Automaton& g, const ProjectionSpec& r) {
  if (r.source() != g.alphabet()) throw AlphabetMismatch("is_observer: projection source differs from alphabet");
  const std::string name = "observer";
  std::string note;
  if (!is_nonblocking(g)) note = "blocking input trimmed before the check";
  const Automaton gt = trim(g);
  if (marks_nothing(gt)) return holds(name, note.empty() ? "empty marked language" : note);
  const Automaton observed = project(gt, r);

  std::map<StateId, Automaton> future;  // projected marked future of plant states
  auto future_of = [&](StateId q) -> const Automaton& {
    auto it = future.find(q);
    if (it != future.end()) return it->second;
    Automaton from = gt;
    from.set_initial(q);
    return future.emplace(q, project(accessible(from), r)).first->second;
  };

  using Key = std::pair<StateId, StateId>;
  std::map<Key, Word> access;
  std::deque<Key> queue;
  const Key root{gt.initial(), observed.initial()};
  access.emplace(root, Word{});
  queue.push_back(root);
  while (!queue.empty()) {
    const Key k = queue.front();
    queue.pop_front();
    Automaton obs_from = observed;
    obs_from.set_initial(k.second);
    const auto cmp = language_subset(accessible(obs_from), future_of(k.first));
    if (!cmp.marked.holds) {
      const Word& s = access.at(k);
      Word t = project_word(s, r.target());
      t.insert(t.end(), cmp.marked.witness->begin(), cmp.marked.witness->end());
      return fails(name, {"s=" + word_to_string(s), "t=" + word_to_string(t)}, note);
    }
    for (std::size_t e = 0; e < gt.event_count(); ++e) {
      const StateId q = gt.next(k.first, e);
      if (q == kNoState) continue;
      const Event& ev = gt.events()[e];
      const StateId x = r.target().count(ev) ? observed.next(k.second, ev) : k.second;
      const Key nk{q, x};
      if (access.count(nk)) continue;
      Word w = access.at(k);
      w.push_back(ev);
      access.emplace(nk, std::move(w));
      queue.push_back(nk);
    }
  }
  return holds(name, note);
}

CheckVerdict is_occ(const Automaton& l, const ProjectionSpec& r, const EventSet& uncontrollable) {
  if (r.source() != l.alphabet()) throw AlphabetMismatch("is_occ: projection source differs from alphabet");
  const std::string name = "occ";
  // (state, a controllable non-target event occurred since the last target event)
  using Key = std::pair<StateId, bool>;
  std::map<Key, Word> access;
  std::deque<Key> queue;
  const Key root{l.initial(), false};
  access.emplace(root, Word{});
  queue.push_back(root);
  while (!queue.empty()) {
    const auto [q, dirty] = queue.front();
    queue.pop_front();
    const Word& w = access.at({q, dirty});
    for (std::size_t e = 0; e < l.event_count(); ++e) {
      const StateId t = l.next(q, e);
      if (t == kNoState) continue;
      const Event& ev = l.events()[e];
      const bool in_target = r.target().count(ev) != 0;
      const bool uc = uncontrollable.count(ev) != 0;
      Word nw = w;
      nw.push_back(ev);
      if (in_target && dirty && uc) return fails(name, {word_to_string(nw)});
      const Key nk{t, in_target ? false : (dirty || !uc)};
      if (access.emplace(nk, std::move(nw)).second) queue.push_back(nk);
    }
  }
  return holds(name);
}

CheckVerdict is_lcc(const Automaton& l, const ProjectionSpec& r, const EventSet& uncontrollable) {
  if (r.source() != l.alphabet()) throw AlphabetMismatch("is_lcc: projection source differs from alphabet");
  const std::string name = "lcc";
  const Automaton a = accessible(l);
  const auto words = access_words(a);
  const std::size_t m = a.event_count();
  std::vector<char> local(m), local_uc(m), target_uc(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Event& ev = a.events()[e];
    const bool in_target = r.target().count(ev) != 0;
    const bool uc = uncontrollable.count(ev) != 0;
    local[e] = !in_target;
    local_uc[e] = !in_target && uc;
    target_uc[e] = in_target && uc;
  }
  auto reach = [&](StateId from, const std::vector<char>& allowed) {
    std::vector<char> seen(a.state_count(), 0);
    std::deque<StateId> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
      const StateId s = queue.front();
      queue.pop_front();
      for (std::size_t e = 0; e < m; ++e) {
        if (!allowed[e]) continue;
        const StateId t = a.next(s, e);
        if (t != kNoState && !seen[t]) {
          seen[t] = 1;
          queue.push_back(t);
        }
      }
    }
    return seen;
  };
  auto enabled_somewhere = [&](const std::vector<char>& states, std::size_t e) {
    for (StateId s = 0; s < a.state_count(); ++s)
      if (states[s] && a.next(s, e) != kNoState) return true;
    return false;
  };

  // The condition depends only on the state reached, so visit states by access word.
  std::vector<StateId> order(a.state_count());
  for (StateId s = 0; s < a.state_count(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](StateId x, StateId y) { return shorter(*words[x], *words[y]); });
  for (StateId q : order) {
    const auto any = reach(q, local);
    const auto uc_only = reach(q, local_uc);
    for (std::size_t e = 0; e < m; ++e) {
      if (!target_uc[e]) continue;
      if (enabled_somewhere(any, e) && !enabled_somewhere(uc_only, e))
        return fails(name, {"s=" + word_to_string(*words[q]), "e=" + a.events()[e]});
    }
  }
  return holds(name);
}

CheckVerdict check_natural_projection_consistency(const ModularSystem& m, std::size_t i) {
  if (i >= m.modules.size()) throw Error("module index out of range");
  const std::string name = "projection-consistency." + std::to_string(i + 1);
  const auto plants = m.plants();
  const Automaton l = parallel(std::span<const Automaton>(plants));
  const Automaton pil = project_onto(l, plants[i].alphabet());
  const auto cmp = language_equal(mark_all(pil), mark_all(plants[i]));
  if (cmp.generated.holds) return holds(name);
  const Word& w = *cmp.generated.witness;
  const bool in_projection = pil.generates(w);
  return fails(name, {word_to_string(w)},
               in_projection ? "string of P_i(L) missing from L_i" : "string of L_i missing from P_i(L)");
}

ModularSystem replace_locals(const ModularSystem& m) {
  ModularSystem out = m;
  const auto plants = m.plants();
  const Automaton l = parallel(std::span<const Automaton>(plants));
  for (auto& mod : out.modules) {
    Automaton repaired = renamed(mark_all(project_onto(l, mod.plant.alphabet())), mod.plant.name());
    if (mod.spec) mod.spec = renamed(accessible(parallel(*mod.spec, repaired)), mod.spec->name());
    mod.plant = std::move(repaired);
  }
  return out;
}

}  // namespace modsup
