#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "modsup/checks.hpp"
#include "modsup/coordination.hpp"
#include "modsup/io.hpp"
#include "modsup/operations.hpp"
#include "modsup/oracle.hpp"
#include "modsup/pipeline.hpp"
#include "modsup/synthesis.hpp"

using namespace modsup;

namespace {

constexpr int kInputError = 3;

EventSet parse_events(const std::string& csv) {
  EventSet out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

struct Loaded {
  std::vector<LoadedAutomaton> files;
  EventTable table;
};

Loaded load_all(const std::vector<std::string>& paths) {
  Loaded l;
  for (const auto& p : paths) l.files.push_back(load_automaton(p));
  l.table = merge_declarations(std::span<const LoadedAutomaton>(l.files));
  return l;
}

std::vector<Automaton> automata(const Loaded& l, std::size_t from = 0, std::size_t count = std::string::npos) {
  std::vector<Automaton> out;
  for (std::size_t i = from; i < l.files.size() && out.size() < count; ++i) out.push_back(l.files[i].automaton);
  return out;
}

int print_verdict(const CheckVerdict& v) {
  std::cout << v.name << ": " << to_string(v.status);
  if (v.bound) std::cout << " (bound " << *v.bound << ")";
  for (std::size_t i = 0; i < v.witness.size(); ++i) std::cout << (i ? " | " : "  witness: ") << v.witness[i];
  if (!v.note.empty()) std::cout << "  [" << v.note << "]";
  std::cout << "\n";
  return v.failed() ? 1 : 0;
}

int print_comparison(const oracle::BoundedLanguage& automaton_side, const oracle::BoundedLanguage& oracle_side) {
  std::cout << "automaton:\n" << oracle::dump(automaton_side) << "oracle:\n" << oracle::dump(oracle_side);
  const bool agree = automaton_side.strings == oracle_side.strings;
  std::cout << "agree: " << (agree ? "yes" : "no") << "\n";
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular supervisory control under partial observation"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Run a project manifest");
  std::string project, out_dir, format = "text";
  bool minimize_flag = false, verify_flag = false, occ_flag = false;
  synth->add_option("--project", project, "Project manifest")->required()->check(CLI::ExistingFile);
  synth->add_flag("--minimize", minimize_flag, "Minimize supervisors and measure minimized artifacts");
  synth->add_flag("--verify-monolithic", verify_flag, "Compare with the monolithic supervisor");
  synth->add_flag("--occ", occ_flag, "Check OCC instead of LCC");
  synth->add_option("--out", out_dir, "Directory for supervisors and reports");
  synth->add_option("--format", format, "Report printed to stdout")->check(CLI::IsMember({"text", "machine"}));

  // check
  auto* check = app.add_subcommand("check", "Structural checks");
  check->require_subcommand(1);
  std::vector<std::string> plants;
  std::string automaton_file, spec_file, target, kappa;
  std::size_t module = 1;
  int bound = 6;
  bool extend = false;

  auto* moc = check->add_subcommand("moc", "Bounded MOC for one module");
  moc->add_option("--plant", plants, "Plant files")->required();
  moc->add_option("--module", module, "Module index, 1-based");
  moc->add_option("--bound", bound, "Bound on s and t'")->check(CLI::NonNegativeNumber);

  std::vector<CLI::App*> structural;
  for (const char* name : {"observer", "occ", "lcc"}) {
    auto* c = check->add_subcommand(name, std::string("Projection property: ") + name);
    c->add_option("--automaton", automaton_file, "Automaton file")->required();
    c->add_option("--target", target, "Comma-separated target alphabet")->required();
    structural.push_back(c);
  }
  auto* condec = check->add_subcommand("condec", "Conditional decomposability");
  condec->add_option("--spec", spec_file, "Global specification")->required();
  condec->add_option("--plant", plants, "Plant files (alphabets)")->required();
  condec->add_option("--kappa", kappa, "Comma-separated coordinator alphabet");
  condec->add_flag("--extend", extend, "Extend kappa greedily until decomposable");
  auto* shared = check->add_subcommand("shared", "Shared-event audits");
  shared->add_option("--plant", plants, "Plant files")->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Compare with string-level oracles");
  orc->require_subcommand(1);
  int witness_bound = -1;
  std::vector<CLI::App*> sups;
  for (const char* name : {"supn", "supc", "supcn"}) {
    auto* c = orc->add_subcommand(name, std::string("Oracle for ") + name);
    c->add_option("--spec", spec_file, "Specification")->required();
    c->add_option("--plant", automaton_file, "Plant")->required();
    c->add_option("--bound", bound, "String length bound")->check(CLI::NonNegativeNumber);
    sups.push_back(c);
  }
  auto* omoc = orc->add_subcommand("moc", "Oracle MOC");
  omoc->add_option("--plant", plants, "Plant files")->required();
  omoc->add_option("--module", module, "Module index, 1-based");
  omoc->add_option("--bound", bound, "Bound on s and t'")->check(CLI::NonNegativeNumber);
  omoc->add_option("--witness-bound", witness_bound, "Bound on s' (default 2 * bound)");

  // report
  auto* report = app.add_subcommand("report", "Render the report of a run directory");
  std::string run_dir;
  report->add_option("run_dir", run_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      ProjectManifest p = load_manifest(project);
      p.options.minimize = p.options.minimize || minimize_flag;
      p.options.verify_monolithic = p.options.verify_monolithic || verify_flag;
      p.options.use_occ = p.options.use_occ || occ_flag;
      const PipelineResult r = run_project(p);
      if (!out_dir.empty()) write_run(r, out_dir);
      std::cout << emit_report(r.report, format == "machine" ? ReportFormat::Machine : ReportFormat::Text);
      return r.report.exit_code();
    }
    if (report->parsed()) {
      const SynthesisReport r = parse_machine_report(read_file(std::filesystem::path(run_dir) / "report.machine"));
      std::cout << emit_report(r, format == "machine" ? ReportFormat::Machine : ReportFormat::Text);
      return 0;
    }
    if (moc->parsed()) {
      const Loaded l = load_all(plants);
      if (module < 1 || module > plants.size()) throw Error("module index out of range");
      const auto parts = automata(l);
      return print_verdict(
          check_moc_bounded(std::span<const Automaton>(parts), l.table.observable_events(), module - 1, bound));
    }
    for (auto* c : structural) {
      if (!c->parsed()) continue;
      const Loaded l = load_all({automaton_file});
      const Automaton& a = l.files[0].automaton;
      const ProjectionSpec r(a.alphabet(), set_intersection(parse_events(target), a.alphabet()));
      const std::string name = c->get_name();
      if (name == "observer") return print_verdict(is_observer(a, r));
      if (name == "occ") return print_verdict(is_occ(a, r, l.table.uncontrollable_events()));
      return print_verdict(is_lcc(a, r, l.table.uncontrollable_events()));
    }
    if (condec->parsed()) {
      std::vector<std::string> files = plants;
      files.push_back(spec_file);
      const Loaded l = load_all(files);
      std::vector<EventSet> alphabets;
      for (std::size_t i = 0; i < plants.size(); ++i) alphabets.push_back(l.files[i].automaton.alphabet());
      const std::span<const EventSet> alpha(alphabets);
      const Automaton& spec = l.files.back().automaton;
      EventSet k = kappa.empty() ? shared_alphabet(alpha) : parse_events(kappa);
      if (extend) k = extend_kappa(spec, alpha, k, l.table.observable_events());
      std::cout << "kappa: " << join_events(k) << "\n";
      return print_verdict(is_conditionally_decomposable(spec, alpha, k));
    }
    if (shared->parsed()) {
      const Loaded l = load_all(plants);
      ModularSystem m;
      m.table = l.table;
      for (const auto& a : automata(l)) m.modules.push_back({a, std::nullopt});
      std::cout << "shared: " << join_events(shared_alphabet(m)) << "\n";
      const int a = print_verdict(check_observability_agreement(std::span<const LoadedAutomaton>(l.files)));
      const int b = print_verdict(check_shared_observable(m));
      const int c = print_verdict(check_shared_controllable(m));
      return (a || b || c) ? 1 : 0;
    }
    for (auto* c : sups) {
      if (!c->parsed()) continue;
      const Loaded l = load_all({spec_file, automaton_file});
      const Automaton& spec = l.files[0].automaton;
      const Automaton& plant = l.files[1].automaton;
      const SynthesisProblem p = make_problem(spec, plant, l.table);
      validate(p);
      const auto k = oracle::marked_slice(spec, bound);
      const auto g = oracle::generated_slice(plant, bound);
      const EventSet uc = set_intersection(l.table.uncontrollable_events(), plant.alphabet());
      const EventSet obs = set_intersection(l.table.observable_events(), plant.alphabet());
      const std::string name = c->get_name();
      if (name == "supn") return print_comparison(oracle::marked_slice(sup_n(p), bound), oracle::oracle_sup_n(k, g, obs));
      if (name == "supc") return print_comparison(oracle::marked_slice(sup_c(p), bound), oracle::oracle_sup_c(k, g, uc));
      return print_comparison(oracle::marked_slice(sup_cn(p), bound), oracle::oracle_sup_cn(k, g, uc, obs));
    }
    if (omoc->parsed()) {
      const Loaded l = load_all(plants);
      if (module < 1 || module > plants.size()) throw Error("module index out of range");
      const int wb = witness_bound < 0 ? 2 * bound : witness_bound;
      const auto parts = automata(l);
      std::vector<oracle::BoundedLanguage> slices;
      for (const auto& a : parts) slices.push_back(oracle::generated_slice(a, wb));
      const auto o = oracle::oracle_moc(slices, l.table.observable_events(), module - 1, bound, wb);
      const auto v = check_moc_bounded(std::span<const Automaton>(parts), l.table.observable_events(), module - 1, bound);
      std::cout << "automaton: " << to_string(v.status) << "\n";
      std::cout << "oracle: " << (o.holds ? "holds" : "fails");
      for (const auto& w : o.witness) std::cout << "  " << word_to_string(w);
      std::cout << "\nagree: " << (o.holds == v.passed() ? "yes" : "no") << "\n";
      return o.holds == v.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "modsup: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
