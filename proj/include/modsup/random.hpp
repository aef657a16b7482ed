#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "modsup/automaton.hpp"
#include "modsup/checks.hpp"

namespace modsup::random {

using Rng = std::mt19937_64;

struct AutomatonOptions {
  int min_states = 1;
  int max_states = 4;
  /// Chance that a free (state, event) slot receives a transition.
  double transition_density = 0.5;
  double marked_density = 0.5;
  /// Transitions only go to higher-numbered states.
  bool acyclic = false;
  bool all_marked = false;
};

/// Every state is reachable from the initial one.
Automaton random_automaton(Rng& rng, const std::string& name, const EventSet& alphabet,
                           const AutomatonOptions& opts = {});

/// A sub-automaton of `plant`: random transitions dropped and states re-marked,
/// so its marked language lies inside L(plant).
Automaton random_spec(Rng& rng, const std::string& name, const Automaton& plant, double keep = 0.75,
                      double marked_density = 0.6, bool prefix_closed = false);

struct TableOptions {
  double controllable_density = 0.6;
  double observable_density = 0.6;
};

EventTable random_table(Rng& rng, const EventSet& events, const TableOptions& opts = {});

struct SystemOptions {
  int min_modules = 2;
  int max_modules = 3;
  int events_per_module = 3;
  /// Size of the global event pool modules draw from; small pools force sharing.
  int event_pool = 5;
  AutomatonOptions plant;
  TableOptions table;
  bool prefix_closed_specs = true;
  double spec_keep = 0.75;
  bool shared_observable = false;
  bool shared_controllable = false;
  /// Generate a global spec over the composed plant instead of local ones.
  bool global_spec = false;
};

ModularSystem random_system(Rng& rng, const SystemOptions& opts = {});

}  // namespace modsup::random
