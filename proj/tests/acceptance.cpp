// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "modsup/coordination.hpp"
#include "modsup/io.hpp"
#include "modsup/pipeline.hpp"
#include "modsup/random.hpp"
#include "modsup/synthesis.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::uint64_t seed = 0;
};

struct Criterion {
  int id;
  std::string title;
  double limit_ms;  // 0 means no runtime limit
  std::function<Outcome()> run;
};

class Failures {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++count_;
    if (first_.empty()) first_ = what;
  }
  int count() const { return count_; }
  std::string summary(const std::string& counts) const {
    if (count_ == 0) return counts;
    return counts + "; " + std::to_string(count_) + " failures, first: " + first_;
  }

 private:
  int count_ = 0;
  std::string first_;
};

SynthesisProblem problem(const Automaton& spec, const Automaton& plant, const EventTable& table) {
  SynthesisProblem p = make_problem(spec, plant, table);
  validate(p);
  return p;
}

std::vector<Automaton> specs_of(const ModularSystem& m) {
  std::vector<Automaton> out;
  for (const auto& mod : m.modules) out.push_back(*mod.spec);
  return out;
}

Automaton compose(const std::vector<Automaton>& parts) { return parallel(std::span<const Automaton>(parts)); }

std::vector<Automaton> local_supervisors(const ModularSystem& m, SynthesisKind kind) {
  std::vector<Automaton> out;
  for (const auto& mod : m.modules) out.push_back(synthesize(kind, problem(*mod.spec, mod.plant, m.table)));
  return out;
}

std::string instance(int k, std::uint64_t seed) {
  return "instance " + std::to_string(k) + " (seed " + std::to_string(seed) + ")";
}

std::string strip_timings(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("_ms=") == std::string::npos) out << line << "\n";
  return out.str();
}

random::SystemOptions small_system() {
  random::SystemOptions o;
  o.min_modules = 2;
  o.max_modules = 3;
  o.plant.max_states = 4;
  o.event_pool = 4;
  o.events_per_module = 3;
  o.prefix_closed_specs = true;
  return o;
}

Outcome counterexample_goldens() {
  Failures f;
  const auto dir = data_dir() / "counterexample";
  std::vector<LoadedAutomaton> files;
  for (const char* n : {"L1", "L2", "L3", "K1", "K2", "K3"}) files.push_back(load_automaton(dir / (std::string(n) + ".aut")));
  const EventTable table = merge_declarations(std::span<const LoadedAutomaton>(files));
  std::vector<Automaton> plants, specs, local;
  for (int i = 0; i < 3; ++i) {
    plants.push_back(files[i].automaton);
    specs.push_back(files[i + 3].automaton);
    local.push_back(sup_n(problem(specs[i], plants[i], table)));
  }
  f.expect(marks_nothing(local[0]), "local result of module 1 is not empty");
  f.expect(language_equal(local[1], chain("E2", plants[1].alphabet(), "u2")).marked.holds,
           "local result of module 2 differs from closure{u2}");
  f.expect(language_equal(local[2], chain("E3", plants[2].alphabet(), "u3")).marked.holds,
           "local result of module 3 differs from closure{u3}");
  const Automaton k = compose(specs);
  const Automaton global = sup_n(problem(k, compose(plants), table));
  f.expect(language_equal(global, k).marked.holds, "global result differs from K1||K2||K3");
  const Automaton p1 = project_onto(global, plants[0].alphabet());
  f.expect(p1.generates(word_from_string("u1")), "projection of the global result misses u1");
  f.expect(!local[0].generates(word_from_string("u1")), "local result of module 1 contains u1");
  const CheckVerdict eq = verify_equivalence(std::span<const Automaton>(local), global);
  f.expect(eq.failed(), "verify_equivalence did not report a difference");
  return {f.count() == 0, f.summary("equivalence " + to_string(eq.status)), 0};
}

Outcome local_normal_below_global() {
  const std::uint64_t seed = 1001;
  random::Rng rng(seed);
  Failures f;
  for (int k = 0; k < 200; ++k) {
    const ModularSystem m = random::random_system(rng, small_system());
    const Automaton plant = compose(m.plants());
    const Automaton local = compose(local_supervisors(m, SynthesisKind::Normal));
    const Automaton global = sup_n(problem(compose(specs_of(m)), plant, m.table));
    f.expect(is_normal(problem(local, plant, m.table)).holds, instance(k, seed) + ": composition not normal");
    f.expect(language_subset(local, global).marked.holds, instance(k, seed) + ": composition not below global");
  }
  return {f.count() == 0, f.summary("200 systems"), seed};
}

// Systems with observable shared events after replacing each plant by P_i(L).
std::vector<ModularSystem> observable_shared_systems(std::uint64_t seed, int count) {
  random::Rng rng(seed);
  random::SystemOptions o = small_system();
  o.shared_observable = true;
  std::vector<ModularSystem> out;
  for (int k = 0; k < count; ++k) out.push_back(random::random_system(rng, o));
  return out;
}

constexpr std::uint64_t kObservableSeed = 2002;

Outcome observable_shared_equality() {
  Failures f;
  const auto systems = observable_shared_systems(kObservableSeed, 200);
  for (std::size_t k = 0; k < systems.size(); ++k) {
    const ModularSystem m = replace_locals(systems[k]);
    const Automaton local = compose(local_supervisors(m, SynthesisKind::Normal));
    const Automaton global = sup_n(problem(compose(specs_of(m)), compose(m.plants()), m.table));
    f.expect(language_equal(local, global).marked.holds, instance(static_cast<int>(k), kObservableSeed));
  }
  return {f.count() == 0, f.summary("200 systems"), kObservableSeed};
}

Outcome moc_on_observable_instances() {
  Failures f;
  int modules = 0;
  const auto systems = observable_shared_systems(kObservableSeed, 200);
  for (std::size_t k = 0; k < systems.size(); ++k) {
    for (const ModularSystem& m : {systems[k], replace_locals(systems[k])})
      for (std::size_t i = 0; i < m.modules.size(); ++i, ++modules) {
        const auto v = check_moc_bounded(m, i, 6);
        f.expect(v.passed(), instance(static_cast<int>(k), kObservableSeed) + " module " + std::to_string(i + 1));
      }
  }

  const std::uint64_t seed = 4004;
  random::Rng rng(seed);
  random::SystemOptions o = small_system();
  o.shared_observable = true;
  o.global_spec = true;
  int coordinated = 0;
  for (int k = 0; k < 200; ++k) {
    const ModularSystem m = random::random_system(rng, o);
    const auto alpha = m.alphabets();
    const std::span<const EventSet> a(alpha);
    const EventSet obs = m.table.observable_events();
    const EventSet kappa = extend_kappa(trim(*m.global_spec), a, shared_alphabet(a), obs);
    if (!is_subset(kappa, obs)) continue;
    ++coordinated;
    const auto plants = m.plants();
    const Automaton coordinator = build_coordinator(std::span<const Automaton>(plants), kappa);
    std::vector<Automaton> localized;
    for (const auto& p : plants) localized.push_back(parallel(mark_all(p), coordinator));
    for (std::size_t i = 0; i < localized.size(); ++i, ++modules) {
      const auto v = check_moc_bounded(std::span<const Automaton>(localized), obs, i, 6);
      f.expect(v.passed(), instance(k, seed) + " localized module " + std::to_string(i + 1));
    }
  }
  f.expect(coordinated >= 100, "only " + std::to_string(coordinated) + " coordination instances with observable kappa");
  return {f.count() == 0,
          f.summary(std::to_string(modules) + " module checks, " + std::to_string(coordinated) +
                    " coordination instances"),
          seed};
}

int depth(const Automaton& acyclic) {
  int d = 0;
  for (const auto& w : oracle::generated_slice(acyclic, 64).strings) d = std::max<int>(d, static_cast<int>(w.size()));
  return d;
}

Outcome oracle_agreement() {
  const std::uint64_t seed = 5005;
  random::Rng rng(seed);
  constexpr int kBound = 5;
  Failures f;
  int moc_failures = 0, conflicts = 0;
  for (int k = 0; k < 300; ++k) {
    random::SystemOptions o = small_system();
    o.plant.acyclic = true;
    o.prefix_closed_specs = k % 2 == 0;
    const ModularSystem m = random::random_system(rng, o);
    const std::string at = instance(k, seed);
    const EventSet obs_all = m.table.observable_events(), uc_all = m.table.uncontrollable_events();

    std::vector<Automaton> sup;
    std::vector<oracle::BoundedLanguage> sup_slices, plant_slices;
    int total_depth = 0;
    for (std::size_t i = 0; i < m.modules.size(); ++i) {
      const auto& mod = m.modules[i];
      const SynthesisProblem p = problem(*mod.spec, mod.plant, m.table);
      const auto ks = oracle::marked_slice(*mod.spec, kBound);
      const auto ls = oracle::generated_slice(mod.plant, kBound);
      const EventSet obs = set_intersection(obs_all, mod.plant.alphabet());
      const EventSet uc = set_intersection(uc_all, mod.plant.alphabet());
      const Automaton n = sup_n(p);
      f.expect(marked(n, kBound) == oracle::oracle_sup_n(ks, ls, obs).strings, at + " sup_n");
      f.expect(marked(sup_c(p), kBound) == oracle::oracle_sup_c(ks, ls, uc).strings, at + " sup_c");
      f.expect(marked(sup_cn(p), kBound) == oracle::oracle_sup_cn(ks, ls, uc, obs).strings, at + " sup_cn");
      sup.push_back(n);
      total_depth += depth(mod.plant);
    }
    // The composition oracle must see whole composed strings to judge conflict.
    for (const auto& s : sup) sup_slices.push_back(oracle::marked_slice(s, total_depth));
    const bool nc = is_nonconflicting(std::span<const Automaton>(sup));
    f.expect(nc == oracle::oracle_nonconflicting(std::span<const oracle::BoundedLanguage>(sup_slices), total_depth),
             at + " nonconflict");
    conflicts += !nc;

    const auto plants = m.plants();
    for (const auto& p : plants) plant_slices.push_back(oracle::generated_slice(p, total_depth));
    for (std::size_t i = 0; i < plants.size(); ++i) {
      const bool got = check_moc_bounded(std::span<const Automaton>(plants), obs_all, i, kBound).passed();
      const auto want = oracle::oracle_moc(std::span<const oracle::BoundedLanguage>(plant_slices), obs_all, i, kBound,
                                           total_depth);
      f.expect(got == want.holds, at + " MOC module " + std::to_string(i + 1));
      moc_failures += !got;
    }
  }
  return {f.count() == 0,
          f.summary("300 systems, " + std::to_string(conflicts) + " conflicting, " + std::to_string(moc_failures) +
                    " MOC violations"),
          seed};
}

Outcome controllable_observable_shared_equality() {
  const std::uint64_t seed = 6006;
  random::Rng rng(seed);
  random::SystemOptions o = small_system();
  o.shared_observable = true;
  o.shared_controllable = true;
  Failures f;
  for (int k = 0; k < 100; ++k) {
    const ModularSystem m = random::random_system(rng, o);
    const Automaton local = compose(local_supervisors(m, SynthesisKind::ControllableNormal));
    const Automaton global = sup_cn(problem(compose(specs_of(m)), compose(m.plants()), m.table));
    f.expect(language_equal(local, global).marked.holds, instance(k, seed));
  }
  return {f.count() == 0, f.summary("100 systems"), seed};
}

Outcome structural_exactness() {
  const std::uint64_t seed = 7007;
  random::Rng rng(seed);
  constexpr int kBound = 6;
  Failures f;
  int observer_fail = 0, occ_fail = 0, lcc_fail = 0;
  const EventSet alpha = events("a b c");
  auto draw = [&](bool all_marked) {
    random::AutomatonOptions o;
    o.max_states = 3;
    o.all_marked = all_marked;
    return random::random_automaton(rng, "G", alpha, o);
  };
  auto target = [&] {
    EventSet t;
    for (const auto& e : alpha)
      if (rng() % 2) t.insert(e);
    return t;
  };
  for (int k = 0; k < 200; ++k) {
    const Automaton g = draw(false);
    const EventSet t = target();
    const bool got = is_observer(g, ProjectionSpec(alpha, t)).passed();
    f.expect(got == oracle::brute_observer(g, t, kBound).holds, instance(k, seed) + " observer");
    observer_fail += !got;
  }
  for (int k = 0; k < 200; ++k) {
    const Automaton l = draw(true);
    const EventSet t = target();
    const EventSet uc = random::random_table(rng, alpha).uncontrollable_events();
    const bool got = is_occ(l, ProjectionSpec(alpha, t), uc).passed();
    f.expect(got == oracle::brute_occ(l, t, uc, kBound).holds, instance(k, seed) + " occ");
    occ_fail += !got;
  }
  for (int k = 0; k < 200; ++k) {
    const Automaton l = draw(true);
    const EventSet t = target();
    const EventSet uc = random::random_table(rng, alpha).uncontrollable_events();
    const bool got = is_lcc(l, ProjectionSpec(alpha, t), uc).passed();
    f.expect(got == oracle::brute_lcc(l, t, uc, kBound, kBound).holds, instance(k, seed) + " lcc");
    lcc_fail += !got;
  }
  return {f.count() == 0,
          f.summary("3 x 200 instances; violations observer " + std::to_string(observer_fail) + ", occ " +
                    std::to_string(occ_fail) + ", lcc " + std::to_string(lcc_fail)),
          seed};
}

Outcome railroad() {
  Failures f;
  const auto dir = data_dir() / "railroad";
  const ProjectManifest local = load_manifest(dir / "local.txt");
  const ModularSystem m = load_system(local);
  for (std::size_t i = 0; i < m.modules.size(); ++i) {
    const Automaton s = sup_n(problem(*m.modules[i].spec, m.modules[i].plant, m.table));
    f.expect(language_equal(s, *m.modules[i].spec).marked.holds, "local result " + std::to_string(i + 1) + " differs from K");
  }
  const PipelineResult g = run_project(load_manifest(dir / "global.txt"));
  f.expect(g.plan && g.plan->kappa == events("w_w w_e"), "coordinator alphabet is not {w_w,w_e}");
  f.expect(g.report.route == "coordinator-observable", "route is '" + g.report.route + "'");
  f.expect(g.report.equivalence && g.report.equivalence->status == Status::Holds, "equivalence does not hold");
  return {f.count() == 0, f.summary("route " + g.report.route), 0};
}

Outcome report_layout() {
  Failures f;
  int reports = 0;
  for (const auto& project : {data_dir() / "railroad" / "global.txt", data_dir() / "railroad" / "local.txt",
                              data_dir() / "counterexample" / "project.txt"}) {
    const ProjectManifest p = load_manifest(project);
    const SynthesisReport a = run_project(p).report, b = run_project(p).report;
    for (auto format : {ReportFormat::Text, ReportFormat::Machine}) {
      ++reports;
      f.expect(strip_timings(emit_report(a, format)) == strip_timings(emit_report(b, format)),
               p.name + ": report differs between runs");
    }
    const std::string text = emit_report(a, ReportFormat::Text);
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      std::istringstream cols(line);
      std::vector<std::string> c;
      for (std::string w; cols >> w;) c.push_back(w);
      if (c == std::vector<std::string>{"Artifact", "States", "Trans.", "Events"}) {
        header = true;
        continue;
      }
      if (!header) continue;
      if (c.empty()) break;
      f.expect(c.size() == 4 && c[1].find_first_not_of("0123456789") == std::string::npos &&
                   c[2].find_first_not_of("0123456789") == std::string::npos &&
                   c[3].find_first_not_of("0123456789") == std::string::npos,
               p.name + ": malformed row '" + line + "'");
      ++rows;
    }
    f.expect(header, p.name + ": no States/Trans./Events table");
    f.expect(rows == a.artifacts.size(), p.name + ": table rows do not match artifacts");
    f.expect(emit_report(parse_machine_report(emit_report(a, ReportFormat::Machine)), ReportFormat::Text) == text,
             p.name + ": machine report does not reproduce the text report");
  }
  return {f.count() == 0, f.summary(std::to_string(reports) + " reports compared"), 0};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "counterexample goldens", 1000, counterexample_goldens},
      {2, "composed local supN is normal and below the global supN", 60000, local_normal_below_global},
      {3, "observable shared events with repaired plants give equality", 120000, observable_shared_equality},
      {4, "bounded MOC holds under observable shared events and observable kappa", 0, moc_on_observable_instances},
      {5, "automata agree with string-level oracles", 0, oracle_agreement},
      {6, "controllable and observable shared events give supCN equality", 0, controllable_observable_shared_equality},
      {7, "observer, OCC and LCC agree with brute force", 0, structural_exactness},
      {8, "railroad local and coordinated runs", 5000, railroad},
      {9, "report layout and determinism", 0, report_layout},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), 0};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_ms > 0 && ms > c.limit_ms) {
      o.pass = false;
      o.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_ms)) + " ms";
    }
    failed += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << o.detail;
    if (o.seed) line << "; seed " << o.seed;
    line << "; " << ms << " ms]";
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
