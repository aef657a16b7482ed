#include "modsup/random.hpp"

#include <algorithm>
#include <vector>

#include "modsup/operations.hpp"

namespace modsup::random {
namespace {

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Automaton random_automaton(Rng& rng, const std::string& name, const EventSet& alphabet,
                           const AutomatonOptions& opts) {
  Automaton a(name, alphabet);
  const int n = uniform(rng, opts.min_states, opts.max_states);
  for (int i = 0; i < n; ++i)
    a.add_state("q" + std::to_string(i), opts.all_marked || chance(rng, opts.marked_density));
  a.set_initial(0);
  const std::size_t k = a.event_count();
  if (k == 0) return a;

  std::vector<std::vector<char>> used(n, std::vector<char>(k, 0));
  // Spanning tree: each state hangs off an earlier state with a free slot.
  for (int s = 1; s < n; ++s) {
    std::vector<std::pair<int, std::size_t>> free;
    for (int p = 0; p < s; ++p)
      for (std::size_t e = 0; e < k; ++e)
        if (!used[p][e]) free.emplace_back(p, e);
    if (free.empty()) break;
    const auto [p, e] = free[uniform(rng, 0, static_cast<int>(free.size()) - 1)];
    a.add_transition(static_cast<StateId>(p), e, static_cast<StateId>(s));
    used[p][e] = 1;
  }
  for (int s = 0; s < n; ++s)
    for (std::size_t e = 0; e < k; ++e) {
      if (used[s][e] || !chance(rng, opts.transition_density)) continue;
      const int lo = opts.acyclic ? s + 1 : 0;
      if (lo >= n) continue;
      a.add_transition(static_cast<StateId>(s), e, static_cast<StateId>(uniform(rng, lo, n - 1)));
      used[s][e] = 1;
    }
  return accessible(a);
}

Automaton random_spec(Rng& rng, const std::string& name, const Automaton& plant, double keep,
                      double marked_density, bool prefix_closed) {
  Automaton spec(name, plant.alphabet());
  for (StateId s = 0; s < plant.state_count(); ++s)
    spec.add_state(plant.label(s), prefix_closed || chance(rng, marked_density));
  if (!plant.has_initial()) return Automaton::empty(name, plant.alphabet());
  spec.set_initial(plant.initial());
  for (StateId s = 0; s < plant.state_count(); ++s)
    for (std::size_t e = 0; e < plant.event_count(); ++e) {
      const StateId t = plant.next(s, e);
      if (t != kNoState && chance(rng, keep)) spec.add_transition(s, e, t);
    }
  return renamed(prefix_closed ? accessible(spec) : trim(spec), name);
}

EventTable random_table(Rng& rng, const EventSet& events, const TableOptions& opts) {
  EventTable table;
  for (const auto& e : events)
    table.set(e, {chance(rng, opts.controllable_density), chance(rng, opts.observable_density)});
  return table;
}

ModularSystem random_system(Rng& rng, const SystemOptions& opts) {
  const int n = uniform(rng, opts.min_modules, opts.max_modules);
  std::vector<Event> pool;
  for (int i = 0; i < opts.event_pool; ++i) pool.push_back(std::string(1, static_cast<char>('a' + i)));

  std::vector<EventSet> alphabets;
  for (int i = 0; i < n; ++i) {
    std::vector<Event> picked = pool;
    std::shuffle(picked.begin(), picked.end(), rng);
    const int k = std::min<int>(opts.events_per_module, static_cast<int>(pool.size()));
    alphabets.emplace_back(picked.begin(), picked.begin() + uniform(rng, 1, k));
  }

  ModularSystem m;
  EventSet all;
  for (const auto& a : alphabets) all = set_union(all, a);
  m.table = random_table(rng, all, opts.table);
  const EventSet shared = shared_alphabet(std::span<const EventSet>(alphabets));
  for (const auto& e : shared) {
    EventAttributes attrs = m.table.attributes(e);
    if (opts.shared_observable) attrs.observable = true;
    if (opts.shared_controllable) attrs.controllable = true;
    m.table.set(e, attrs);
  }

  AutomatonOptions plant_opts = opts.plant;
  plant_opts.all_marked = true;
  for (int i = 0; i < n; ++i) {
    Module mod{random_automaton(rng, "G" + std::to_string(i + 1), alphabets[i], plant_opts), std::nullopt};
    if (!opts.global_spec)
      mod.spec = random_spec(rng, "K" + std::to_string(i + 1), mod.plant, opts.spec_keep, 0.6,
                             opts.prefix_closed_specs);
    m.modules.push_back(std::move(mod));
  }
  if (opts.global_spec) {
    const Automaton plant = parallel(std::span<const Automaton>(m.plants()));
    m.global_spec = random_spec(rng, "K", plant, opts.spec_keep, 0.6, opts.prefix_closed_specs);
  }
  return m;
}

}  // namespace modsup::random
