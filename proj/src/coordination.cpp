#include "modsup/coordination.hpp"

#include <sstream>

#include "modsup/io.hpp"
#include "modsup/operations.hpp"

namespace modsup {
namespace {

EventSet union_of(std::span<const EventSet> alphabets) {
  EventSet out;
  for (const auto& a : alphabets) out = set_union(out, a);
  return out;
}

std::vector<Automaton> local_projections(const Automaton& spec, std::span<const EventSet> alphabets,
                                         const EventSet& kappa) {
  std::vector<Automaton> parts;
  parts.reserve(alphabets.size());
  for (const auto& a : alphabets) parts.push_back(project_onto(spec, set_union(a, kappa)));
  return parts;
}

void require_kappa(std::span<const EventSet> alphabets, const EventSet& kappa) {
  const EventSet sigma = union_of(alphabets);
  if (!is_subset(kappa, sigma)) throw Error("kappa {" + join_events(kappa) + "} leaves the global alphabet");
  const EventSet missing = set_difference(shared_alphabet(alphabets), kappa);
  if (!missing.empty()) throw Error("kappa misses shared events {" + join_events(missing) + "}");
}

}  // namespace

CheckVerdict is_conditionally_decomposable(const Automaton& spec, std::span<const EventSet> alphabets,
                                           const EventSet& kappa) {
  if (alphabets.empty()) throw Error("conditional decomposability needs at least one alphabet");
  if (spec.alphabet() != union_of(alphabets))
    throw AlphabetMismatch("specification '" + spec.name() + "' is not over the union of the module alphabets");
  require_kappa(alphabets, kappa);
  CheckVerdict v = holds("conditional-decomposability", "kappa={" + join_events(kappa) + "}");
  if (marks_nothing(spec)) return v;
  const auto parts = local_projections(spec, alphabets, kappa);
  const Automaton composed = parallel(std::span<const Automaton>(parts));
  const auto cmp = language_subset(composed, spec);
  if (!cmp.marked.holds) {
    v.status = Status::Fails;
    v.witness = {word_to_string(*cmp.marked.witness)};
  }
  return v;
}

EventSet extend_kappa(const Automaton& spec, std::span<const EventSet> alphabets, const EventSet& seed,
                      const EventSet& observable) {
  const EventSet sigma = union_of(alphabets);
  if (!is_subset(shared_alphabet(alphabets), seed)) throw Error("kappa seed must contain every shared event");
  EventSet kappa = seed;
  for (;;) {
    const CheckVerdict v = is_conditionally_decomposable(spec, alphabets, kappa);
    if (v.passed()) return kappa;
    const Word witness = word_from_string(v.witness.front());

    std::vector<Event> candidates;
    for (const auto& e : set_difference(sigma, kappa))
      if (observable.count(e)) candidates.push_back(e);
    for (const auto& e : set_difference(sigma, kappa))
      if (!observable.count(e)) candidates.push_back(e);

    auto removes_witness = [&](const Event& e) {
      EventSet trial = kappa;
      trial.insert(e);
      for (const auto& a : alphabets) {
        const EventSet local = set_union(a, trial);
        if (!project_onto(spec, local).accepts(project_word(witness, local))) return true;
      }
      return false;
    };
    Event chosen = candidates.front();
    for (const auto& e : candidates)
      if (removes_witness(e)) {
        chosen = e;
        break;
      }
    kappa.insert(chosen);
  }
}

Automaton build_coordinator(std::span<const Automaton> plants, const EventSet& kappa) {
  if (plants.empty()) throw Error("coordinator needs at least one plant");
  std::vector<Automaton> parts;
  parts.reserve(plants.size());
  for (const auto& p : plants) parts.push_back(project_onto(mark_all(p), kappa));
  return renamed(parallel(std::span<const Automaton>(parts)), "coordinator");
}

CoordinationPlan localize(const ModularSystem& m, const EventSet& kappa) {
  if (!m.global_spec) throw Error("localize requires a global specification");
  const auto alphabets = m.alphabets();
  const auto plants = m.plants();
  const std::span<const EventSet> alpha(alphabets);
  const Automaton spec = trim(*m.global_spec);

  CoordinationPlan plan;
  plan.kappa = kappa;
  CheckVerdict decomposable = is_conditionally_decomposable(spec, alpha, kappa);
  if (!decomposable.passed())
    throw Error("specification is not conditionally decomposable for kappa {" + join_events(kappa) +
                "}: witness " + decomposable.witness.front());
  plan.certificates.push_back(decomposable);

  plan.coordinator = build_coordinator(std::span<const Automaton>(plants), kappa);
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const std::string suffix = std::to_string(i + 1) + "+k";
    plan.local_alphabets.push_back(set_union(alphabets[i], kappa));
    plan.localized_plants.push_back(renamed(parallel(mark_all(plants[i]), plan.coordinator), "L" + suffix));
    plan.localized_specs.push_back(renamed(project_onto(spec, plan.local_alphabets.back()), "K" + suffix));
  }

  auto certify = [&](std::string name, bool ok, const std::optional<Word>& witness) {
    if (!ok) throw Error("coordination plan certificate '" + name + "' failed: " + word_to_string(*witness));
    plan.certificates.push_back(holds(std::move(name)));
  };
  const Automaton global = mark_all(parallel(std::span<const Automaton>(plants)));
  const Automaton local_plants = mark_all(parallel(std::span<const Automaton>(plan.localized_plants)));
  const auto plants_eq = language_equal(local_plants, global);
  certify("plan.parallel-plants", plants_eq.generated.holds, plants_eq.generated.witness);
  if (!marks_nothing(spec)) {
    const auto specs_eq = language_equal(parallel(std::span<const Automaton>(plan.localized_specs)), spec);
    certify("plan.parallel-specs", specs_eq.marked.holds, specs_eq.marked.witness);
  }
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const auto eq = language_equal(mark_all(project_onto(global, plan.local_alphabets[i])),
                                   mark_all(plan.localized_plants[i]));
    certify("plan.projection." + std::to_string(i + 1), eq.generated.holds, eq.generated.witness);
  }
  return plan;
}

ModularSystem localized_system(const CoordinationPlan& plan, const EventTable& table) {
  ModularSystem out;
  out.table = table;
  out.kappa = plan.kappa;
  for (std::size_t i = 0; i < plan.localized_plants.size(); ++i)
    out.modules.push_back({plan.localized_plants[i], plan.localized_specs[i]});
  return out;
}

void write_plan(const CoordinationPlan& plan, const EventTable& table, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_automaton(dir / "coordinator.aut", plan.coordinator, table);
  std::ostringstream txt;
  txt << "kappa=" << join_events(plan.kappa) << "\n";
  for (std::size_t i = 0; i < plan.localized_plants.size(); ++i) {
    const std::string n = std::to_string(i + 1);
    save_automaton(dir / ("plant_" + n + ".aut"), plan.localized_plants[i], table);
    save_automaton(dir / ("spec_" + n + ".aut"), plan.localized_specs[i], table);
    txt << "module." << n << ".alphabet=" << join_events(plan.local_alphabets[i]) << "\n";
  }
  for (const auto& c : plan.certificates) txt << "certificate." << c.name << "=" << to_string(c.status) << "\n";
  write_file(dir / "plan.txt", txt.str());
}

}  // namespace modsup
