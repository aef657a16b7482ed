#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "modsup/automaton.hpp"
#include "modsup/checks.hpp"

namespace modsup {

/// K = ∥ P_{i+κ}(K) on marked languages, where Σ_{i+κ} = Σ_i ∪ κ. Throws
/// Error if κ misses a shared event.
CheckVerdict is_conditionally_decomposable(const Automaton& spec, std::span<const EventSet> alphabets,
                                           const EventSet& kappa);

/// Greedy extension of `seed` until the spec is conditionally decomposable.
/// Each step adds an event that removes the current witness, preferring
/// observable events and then the lexicographically smallest name.
EventSet extend_kappa(const Automaton& spec, std::span<const EventSet> alphabets, const EventSet& seed,
                      const EventSet& observable);

/// ∥ P^i_{κ,i}(L_i): an automaton over κ generating P_κ(L).
Automaton build_coordinator(std::span<const Automaton> plants, const EventSet& kappa);

struct CoordinationPlan {
  EventSet kappa;
  std::vector<EventSet> local_alphabets;
  Automaton coordinator;
  std::vector<Automaton> localized_plants;
  std::vector<Automaton> localized_specs;
  /// Decomposability of K, ∥ L_{i+κ} = L, ∥ K_{i+κ} = K and P_{i+κ}(L) = L_{i+κ}.
  std::vector<CheckVerdict> certificates;
};

/// Localizes a global-spec system. Throws Error when the decomposability
/// certificate fails for `kappa`.
CoordinationPlan localize(const ModularSystem& m, const EventSet& kappa);

/// The localized modules with K_{i+κ} as local specs.
ModularSystem localized_system(const CoordinationPlan& plan, const EventTable& table);

/// Writes coordinator.aut, plant_i.aut, spec_i.aut and plan.txt into `dir`.
void write_plan(const CoordinationPlan& plan, const EventTable& table, const std::filesystem::path& dir);

}  // namespace modsup
