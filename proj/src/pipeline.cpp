#include "modsup/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "modsup/io.hpp"
#include "modsup/operations.hpp"

namespace modsup {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string trim_ws(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& v, const std::string& source, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError(source, line, "expected a boolean, got '" + v + "'");
}

EventSet parse_event_list(const std::string& v) {
  EventSet out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim_ws(item);
    if (!item.empty()) out.insert(item);
  }
  return out;
}

ArtifactStats stats_of(const std::string& name, const Automaton& a, bool minimized) {
  const Automaton m = minimized ? minimize(a) : a;
  return {name, m.state_count(), m.transition_count(), m.event_count()};
}

struct Timer {
  SynthesisReport& report;
  std::string stage;
  Clock::time_point start = Clock::now();
  ~Timer() { report.timings.push_back({stage, elapsed_ms(start)}); }
};

CheckVerdict timed(std::function<CheckVerdict()> f) {
  const auto start = Clock::now();
  CheckVerdict v = f();
  v.wall_ms = elapsed_ms(start);
  return v;
}

CheckVerdict events_within(const std::string& name, const EventSet& events, const EventSet& allowed,
                           const std::string& what) {
  const EventSet offending = set_difference(events, allowed);
  if (offending.empty()) return holds(name);
  return fails(name, {*offending.begin()}, what + ": " + join_events(offending));
}

// Problem-level inputs for the per-module stage; plants and specs already
// share alphabets module by module.
struct CoreInput {
  ModularSystem system;
  Automaton monolithic_plant;
  Automaton monolithic_spec;
  bool coordinated = false;
};

void run_core(CoreInput in, const PipelineOptions& o, PipelineResult& out) {
  SynthesisReport& r = out.report;
  ModularSystem& m = in.system;
  const std::size_t n = m.modules.size();
  // In coordinated mode the shared events of the localized modules are exactly kappa.
  const std::string prefix = in.coordinated ? "coordinator-" : "shared-events-";

  const EventSet shared = shared_alphabet(m);
  const CheckVerdict shared_obs = timed([&] {
    return events_within("shared-observable", shared, m.table.observable_events(), "unobservable shared events");
  });
  const CheckVerdict shared_ctrl = timed([&] {
    return events_within("shared-controllable", shared, m.table.controllable_events(),
                         "uncontrollable shared events");
  });
  const CheckVerdict shared_both = timed([&] { return check_shared_controllable(m); });
  {
    Timer t{r, "audit"};
    r.checks.push_back(timed([&] { return check_observability_agreement(m); }));
    r.checks.push_back(shared_obs);
    r.checks.push_back(shared_ctrl);
    r.checks.push_back(shared_both);
  }

  bool projections_ok = true;
  {
    Timer t{r, "projection"};
    std::vector<CheckVerdict> verdicts;
    for (std::size_t i = 0; i < n; ++i)
      verdicts.push_back(timed([&] { return check_natural_projection_consistency(m, i); }));
    const bool any_failed = std::any_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.failed(); });
    if (any_failed && o.repair_locals) {
      m = replace_locals(m);
      r.notes.push_back("local plants replaced by their projections of the global plant");
      verdicts.clear();
      for (std::size_t i = 0; i < n; ++i) {
        CheckVerdict v = timed([&] { return check_natural_projection_consistency(m, i); });
        v.note = "after repair";
        verdicts.push_back(v);
      }
    }
    for (auto& v : verdicts) {
      projections_ok = projections_ok && v.passed();
      r.checks.push_back(std::move(v));
    }
  }

  {
    Timer t{r, "synthesis"};
    for (std::size_t i = 0; i < n; ++i) {
      SynthesisProblem p = make_problem(*m.modules[i].spec, m.modules[i].plant, m.table);
      validate(p);
      Automaton s = synthesize(o.synthesis, p);
      if (o.minimize) s = minimize(s);
      out.supervisors.push_back(renamed(std::move(s), "S" + std::to_string(i + 1)));
    }
  }

  CheckVerdict nonconflict;
  {
    Timer t{r, "nonconflict"};
    nonconflict = timed([&] {
      const auto conflict = find_conflict(std::span<const Automaton>(out.supervisors));
      if (!conflict) return holds("nonconflicting");
      return fails("nonconflicting", {word_to_string(*conflict)}, "string of the composed closures that cannot reach marking");
    });
    r.checks.push_back(nonconflict);
  }
  if (nonconflict.failed()) {
    r.stopped = true;
    r.notes.push_back("local supervisors are conflicting; certification and monolithic comparison skipped");
  }

  if (!r.stopped) {
    std::string route;
    if (n == 1) {
      route = "single-module";
    } else if (projections_ok) {
      switch (o.synthesis) {
        case SynthesisKind::Normal:
          if (shared_obs.passed()) route = prefix + "observable";
          break;
        case SynthesisKind::Controllable:
          if (shared_ctrl.passed()) route = prefix + "controllable";
          break;
        case SynthesisKind::ControllableNormal:
          if (shared_both.passed()) route = prefix + "controllable-observable";
          break;
      }
    }
    // Structural route: observer plus LCC/OCC of every P_i for L.
    const bool needs_consistency = o.synthesis != SynthesisKind::Normal;
    if (route.empty() && projections_ok && needs_consistency && n > 1) {
      Timer t{r, "structural"};
      const Automaton l = mark_all(in.monolithic_plant);
      const EventSet sigma = l.alphabet();
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        const ProjectionSpec pi(sigma, m.modules[i].plant.alphabet());
        CheckVerdict obs = timed([&] { return is_observer(l, pi); });
        obs.name = "observer." + std::to_string(i + 1);
        CheckVerdict cc = timed([&] {
          return o.use_occ ? is_occ(l, pi, m.table.uncontrollable_events())
                           : is_lcc(l, pi, m.table.uncontrollable_events());
        });
        cc.name = (o.use_occ ? "occ." : "lcc.") + std::to_string(i + 1);
        all = all && obs.passed() && cc.passed();
        r.checks.push_back(obs);
        r.checks.push_back(cc);
      }
      const bool normality_ok = o.synthesis == SynthesisKind::Controllable || shared_obs.passed();
      if (all && normality_ok) route = (in.coordinated ? "coordinator-" : "") + std::string(o.use_occ ? "observer-and-occ" : "observer-and-lcc");
    }
    // MOC can only be semi-checked, so it never certifies on its own.
    if (route.empty() && o.synthesis != SynthesisKind::Controllable && n > 1) {
      Timer t{r, "moc"};
      const auto plants = m.plants();
      const std::span<const Automaton> parts(plants);
      int bound = o.moc_bound.value_or(default_moc_bound(in.monolithic_plant.state_count()));
      bool all = true;
      for (std::size_t i = 0; i < n; ++i) {
        const int b = o.moc_bound ? bound : affordable_moc_bound(parts, i, bound);
        CheckVerdict v = timed([&] { return check_moc_bounded(parts, m.table.observable_events(), i, b); });
        if (b < bound) v.note = "bound lowered from " + std::to_string(bound) + " to keep enumeration tractable";
        bound = std::min(bound, b);
        all = all && v.passed();
        r.checks.push_back(v);
      }
      if (all)
        r.notes.push_back("MOC holds only up to bound " + std::to_string(bound) +
                          "; maximal permissiveness is not certified");
    }
    r.route = route;
    if (route.empty()) r.notes.push_back("no hypothesis set discharged; maximal permissiveness not certified");
  }

  if (o.verify_monolithic && !r.stopped) {
    Timer t{r, "monolithic"};
    SynthesisProblem p = make_problem(in.monolithic_spec, in.monolithic_plant, m.table);
    validate(p);
    Automaton mono = synthesize(o.synthesis, p);
    if (o.minimize) mono = minimize(mono);
    out.monolithic = renamed(std::move(mono), "S");
    r.equivalence = timed([&] { return verify_equivalence(out.supervisors, *out.monolithic); });

    CheckVerdict subset = timed([&] {
      const Automaton composed = parallel(std::span<const Automaton>(out.supervisors));
      const auto cmp = language_subset(composed, *out.monolithic);
      if (cmp.marked.holds) return holds("equivalence.subset");
      return fails("equivalence.subset", {word_to_string(*cmp.marked.witness)});
    });
    r.checks.push_back(subset);
    if (r.equivalence->failed()) {
      for (std::size_t i = 0; i < n; ++i) {
        r.checks.push_back(timed([&] {
          const std::string name = "projection-inclusion." + std::to_string(i + 1);
          const Automaton projected = project_onto(*out.monolithic, out.supervisors[i].alphabet());
          if (language_subset(projected, out.supervisors[i]).marked.holds) return holds(name);
          std::vector<std::string> missing;
          for (const auto& w : enumerate_language(difference(projected, out.supervisors[i]), 4).marked) {
            missing.push_back(word_to_string(w));
            if (missing.size() == 6) break;
          }
          return fails(name, missing, "strings of the projected monolithic supervisor missing locally");
        }));
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    r.artifacts.push_back(stats_of("S" + std::to_string(i + 1), out.supervisors[i], o.minimize));
  if (out.monolithic) r.artifacts.push_back(stats_of("S", *out.monolithic, o.minimize));
}

ModularSystem prepared(const ModularSystem& m, const PipelineOptions& o) {
  ModularSystem out = m;
  if (o.intersect_spec) {
    for (auto& mod : out.modules)
      if (mod.spec) mod.spec = renamed(trim(parallel(*mod.spec, mod.plant)), mod.spec->name());
    if (out.global_spec) {
      const auto plants = out.plants();
      out.global_spec =
          renamed(trim(parallel(*out.global_spec, parallel(std::span<const Automaton>(plants)))), out.global_spec->name());
    }
  }
  out.validate();
  return out;
}

void start_report(SynthesisReport& r, const ModularSystem& m, const PipelineOptions& o, Mode mode,
                  const std::string& project) {
  r.project = project;
  r.mode = to_string(mode);
  r.synthesis = to_string(o.synthesis);
  r.modules = m.modules.size();
  for (std::size_t i = 0; i < m.modules.size(); ++i)
    r.artifacts.push_back(stats_of("G" + std::to_string(i + 1), m.modules[i].plant, o.minimize));
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::LocalSpecs ? "local-specs" : "global-spec"; }

Mode parse_mode(const std::string& text) {
  if (text == "local-specs") return Mode::LocalSpecs;
  if (text == "global-spec") return Mode::GlobalSpec;
  throw Error("unknown mode '" + text + "'");
}

ProjectManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir, const std::string& name) {
  ProjectManifest p;
  p.name = name;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool saw_mode = false;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim_ws(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(name, line, "expected key=value");
    const std::string key = trim_ws(content.substr(0, eq));
    const std::string value = trim_ws(content.substr(eq + 1));
    try {
      if (key == "name") p.name = value;
      else if (key == "mode") p.mode = parse_mode(value), saw_mode = true;
      else if (key == "plant") p.plants.push_back(base_dir / value);
      else if (key == "spec") p.specs.push_back(base_dir / value);
      else if (key == "global_spec") p.global_spec = base_dir / value;
      else if (key == "kappa") p.options.kappa = set_union(p.options.kappa.value_or(EventSet{}), parse_event_list(value));
      else if (key == "synthesis") p.options.synthesis = parse_synthesis_kind(value);
      else if (key == "moc_bound") {
        p.options.moc_bound = std::stoi(value);
        if (*p.options.moc_bound < 0) throw Error("moc_bound must be nonnegative");
      }
      else if (key == "verify_monolithic") p.options.verify_monolithic = parse_bool(value, name, line);
      else if (key == "repair_locals") p.options.repair_locals = parse_bool(value, name, line);
      else if (key == "intersect_spec") p.options.intersect_spec = parse_bool(value, name, line);
      else if (key == "minimize") p.options.minimize = parse_bool(value, name, line);
      else if (key == "control_consistency") {
        if (value != "lcc" && value != "occ") throw Error("control_consistency must be lcc or occ");
        p.options.use_occ = value == "occ";
      } else throw Error("unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(name, line, e.what());
    }
  }
  if (!saw_mode) throw ParseError(name, line, "missing mode");
  if (p.plants.empty()) throw ParseError(name, line, "no plant files");
  if (p.mode == Mode::LocalSpecs) {
    if (p.global_spec) throw ParseError(name, line, "global_spec given in local-specs mode");
    if (p.specs.size() != p.plants.size()) throw ParseError(name, line, "local-specs mode needs one spec per plant");
  } else {
    if (!p.global_spec) throw ParseError(name, line, "global-spec mode needs global_spec");
    if (!p.specs.empty()) throw ParseError(name, line, "spec entries given in global-spec mode");
  }
  return p;
}

ProjectManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path(), path.stem().string());
}

ModularSystem load_system(const ProjectManifest& p) {
  std::vector<LoadedAutomaton> files;
  for (const auto& f : p.plants) files.push_back(load_automaton(f));
  for (const auto& f : p.specs) files.push_back(load_automaton(f));
  if (p.global_spec) files.push_back(load_automaton(*p.global_spec));

  ModularSystem m;
  m.table = merge_declarations(std::span<const LoadedAutomaton>(files));
  for (std::size_t i = 0; i < p.plants.size(); ++i) {
    Module mod{files[i].automaton, std::nullopt};
    if (p.mode == Mode::LocalSpecs) mod.spec = files[p.plants.size() + i].automaton;
    m.modules.push_back(std::move(mod));
  }
  if (p.global_spec) m.global_spec = files.back().automaton;
  m.kappa = p.options.kappa;
  return m;
}

int SynthesisReport::exit_code() const {
  if (equivalence && equivalence->failed()) return 2;
  return certified() ? 0 : 1;
}

const CheckVerdict* SynthesisReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CheckVerdict verify_equivalence(std::span<const Automaton> locals, const Automaton& monolithic) {
  if (locals.empty()) throw Error("verify_equivalence needs at least one local supervisor");
  const Automaton composed = parallel(locals);
  const auto cmp = language_equal(composed, monolithic);
  if (cmp.marked.holds) {
    CheckVerdict v = holds("equivalence");
    if (!cmp.generated.holds) v.note = "marked languages agree; generated languages differ";
    return v;
  }
  const Word& w = *cmp.marked.witness;
  return fails("equivalence", {word_to_string(w)},
               composed.accepts(w) ? "in the local composition only" : "in the monolithic supervisor only");
}

PipelineResult run_local_mode(const ModularSystem& input, const PipelineOptions& o, const std::string& project) {
  PipelineResult out;
  SynthesisReport& r = out.report;
  ModularSystem m = prepared(input, o);
  if (!m.has_local_specs()) throw Error("local-specs mode needs a specification per module");
  out.table = m.table;
  start_report(r, m, o, Mode::LocalSpecs, project);
  for (std::size_t i = 0; i < m.modules.size(); ++i)
    r.artifacts.push_back(stats_of("K" + std::to_string(i + 1), *m.modules[i].spec, o.minimize));

  CoreInput in;
  const auto plants = m.plants();
  std::vector<Automaton> specs;
  for (const auto& mod : m.modules) specs.push_back(*mod.spec);
  in.monolithic_plant = renamed(parallel(std::span<const Automaton>(plants)), "G");
  in.monolithic_spec = renamed(parallel(std::span<const Automaton>(specs)), "K");
  in.system = std::move(m);
  run_core(std::move(in), o, out);
  return out;
}

PipelineResult run_global_mode(const ModularSystem& input, const PipelineOptions& o, const std::string& project) {
  PipelineResult out;
  SynthesisReport& r = out.report;
  ModularSystem m = prepared(input, o);
  if (!m.global_spec) throw Error("global-spec mode needs a global specification");
  out.table = m.table;
  start_report(r, m, o, Mode::GlobalSpec, project);
  r.artifacts.push_back(stats_of("K", *m.global_spec, o.minimize));

  const auto alphabets = m.alphabets();
  const std::span<const EventSet> alpha(alphabets);
  const Automaton spec = trim(*m.global_spec);
  EventSet kappa;
  {
    Timer t{r, "kappa"};
    if (const auto& k = o.kappa ? o.kappa : m.kappa) {
      kappa = *k;
    } else {
      kappa = extend_kappa(spec, alpha, shared_alphabet(alpha), m.table.observable_events());
      r.notes.push_back("kappa computed by greedy extension: {" + join_events(kappa) + "}");
    }
    CheckVerdict condec = timed([&] { return is_conditionally_decomposable(spec, alpha, kappa); });
    r.checks.push_back(condec);
    r.checks.push_back(events_within("kappa-observable", kappa, m.table.observable_events(),
                                     "unobservable coordinator events"));
    r.checks.push_back(events_within("kappa-controllable", kappa, m.table.controllable_events(),
                                     "uncontrollable coordinator events"));
    if (condec.failed()) {
      r.stopped = true;
      r.notes.push_back("specification is not conditionally decomposable for the given kappa");
      return out;
    }
  }
  {
    Timer t{r, "coordination"};
    out.plan = localize(m, kappa);
    for (std::size_t c = 1; c < out.plan->certificates.size(); ++c) r.checks.push_back(out.plan->certificates[c]);
  }
  r.artifacts.push_back(stats_of("Gk", out.plan->coordinator, o.minimize));
  for (std::size_t i = 0; i < m.modules.size(); ++i)
    r.artifacts.push_back(stats_of("L" + std::to_string(i + 1) + "+k", out.plan->localized_plants[i], o.minimize));
  for (std::size_t i = 0; i < m.modules.size(); ++i)
    r.artifacts.push_back(stats_of("K" + std::to_string(i + 1) + "+k", out.plan->localized_specs[i], o.minimize));

  CoreInput in;
  const auto plants = m.plants();
  in.monolithic_plant = renamed(parallel(std::span<const Automaton>(plants)), "G");
  in.monolithic_spec = renamed(spec, "K");
  in.system = localized_system(*out.plan, m.table);
  in.coordinated = true;
  run_core(std::move(in), o, out);
  return out;
}

PipelineResult run_project(const ProjectManifest& p) {
  const ModularSystem m = load_system(p);
  return p.mode == Mode::LocalSpecs ? run_local_mode(m, p.options, p.name) : run_global_mode(m, p.options, p.name);
}

namespace {

std::string format_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

void emit_verdict(std::ostream& out, const std::string& key, const CheckVerdict& v) {
  out << key << ".name=" << v.name << "\n";
  out << key << ".status=" << to_string(v.status) << "\n";
  if (v.bound) out << key << ".bound=" << *v.bound << "\n";
  for (std::size_t w = 0; w < v.witness.size(); ++w) out << key << ".witness." << w + 1 << "=" << v.witness[w] << "\n";
  if (!v.note.empty()) out << key << ".note=" << v.note << "\n";
  out << key << ".wall_ms=" << format_ms(v.wall_ms) << "\n";
}

std::string machine_report(const SynthesisReport& r) {
  std::ostringstream out;
  out << "report.project=" << r.project << "\n";
  out << "report.mode=" << r.mode << "\n";
  out << "report.synthesis=" << r.synthesis << "\n";
  out << "report.modules=" << r.modules << "\n";
  out << "report.certified=" << (r.certified() ? "true" : "false") << "\n";
  out << "report.route=" << r.route << "\n";
  out << "report.stopped=" << (r.stopped ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < r.artifacts.size(); ++i) {
    const auto& a = r.artifacts[i];
    const std::string key = "artifact." + std::to_string(i + 1);
    out << key << ".name=" << a.name << "\n";
    out << key << ".states=" << a.states << "\n";
    out << key << ".transitions=" << a.transitions << "\n";
    out << key << ".events=" << a.events << "\n";
  }
  for (std::size_t i = 0; i < r.checks.size(); ++i) emit_verdict(out, "check." + std::to_string(i + 1), r.checks[i]);
  if (r.equivalence) emit_verdict(out, "equivalence", *r.equivalence);
  for (std::size_t i = 0; i < r.notes.size(); ++i) out << "note." << i + 1 << "=" << r.notes[i] << "\n";
  for (const auto& t : r.timings) out << "timing." << t.stage << "_ms=" << format_ms(t.ms) << "\n";
  return out.str();
}

std::string verdict_line(const CheckVerdict& v) {
  std::ostringstream out;
  out << to_string(v.status);
  if (v.bound) out << " (bound " << *v.bound << ")";
  if (!v.witness.empty()) {
    out << "  witness:";
    for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? " | " : " ") << v.witness[i];
  }
  if (!v.note.empty()) out << "  [" << v.note << "]";
  return out.str();
}

std::string text_report(const SynthesisReport& r) {
  std::ostringstream out;
  out << "modsup synthesis report\n";
  out << "project: " << r.project << "\n";
  out << "mode: " << r.mode << "\n";
  out << "synthesis: " << r.synthesis << "\n";
  out << "modules: " << r.modules << "\n\n";

  std::size_t width = 10;
  for (const auto& a : r.artifacts) width = std::max(width, a.name.size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "Artifact" << std::right << std::setw(8) << "States"
      << std::setw(8) << "Trans." << std::setw(8) << "Events" << "\n";
  for (const auto& a : r.artifacts)
    out << std::left << std::setw(static_cast<int>(width)) << a.name << std::right << std::setw(8) << a.states
        << std::setw(8) << a.transitions << std::setw(8) << a.events << "\n";

  if (!r.checks.empty()) {
    std::size_t cw = 0;
    for (const auto& c : r.checks) cw = std::max(cw, c.name.size());
    out << "\nChecks\n";
    for (const auto& c : r.checks)
      out << "  " << std::left << std::setw(static_cast<int>(cw + 2)) << c.name << verdict_line(c) << "\n";
  }
  if (r.equivalence) out << "\nEquivalence: " << verdict_line(*r.equivalence) << "\n";
  if (!r.modules) return out.str();
  out << "\nCertification: " << (r.certified() ? "certified via " + r.route : std::string("not certified")) << "\n";
  if (r.stopped) out << "Stopped early\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (!r.timings.empty()) {
    out << "\nTimings\n";
    for (const auto& t : r.timings) out << "  " << t.stage << "_ms=" << format_ms(t.ms) << "\n";
  }
  return out.str();
}

CheckVerdict read_verdict(const std::map<std::string, std::string>& kv, const std::string& key) {
  CheckVerdict v;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(key + "." + k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* s = get("name")) v.name = *s;
  if (const auto* s = get("status")) v.status = parse_status(*s);
  if (const auto* s = get("bound")) v.bound = std::stoi(*s);
  if (const auto* s = get("note")) v.note = *s;
  if (const auto* s = get("wall_ms")) v.wall_ms = std::stod(*s);
  for (std::size_t w = 1;; ++w) {
    const auto* s = get("witness." + std::to_string(w));
    if (!s) break;
    v.witness.push_back(*s);
  }
  return v;
}

}  // namespace

std::string emit_report(const SynthesisReport& r, ReportFormat format) {
  return format == ReportFormat::Machine ? machine_report(r) : text_report(r);
}

SynthesisReport parse_machine_report(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::vector<Timing> timings;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("report.machine", n, "expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key.rfind("timing.", 0) == 0 && key.size() > 10 && key.substr(key.size() - 3) == "_ms") {
      timings.push_back({key.substr(7, key.size() - 10), std::stod(value)});
      continue;
    }
    kv[key] = value;
  }
  auto value = [&](const std::string& k) {
    auto it = kv.find(k);
    return it == kv.end() ? std::string() : it->second;
  };
  SynthesisReport r;
  r.project = value("report.project");
  r.mode = value("report.mode");
  r.synthesis = value("report.synthesis");
  r.modules = kv.count("report.modules") ? std::stoul(value("report.modules")) : 0;
  r.route = value("report.route");
  r.stopped = value("report.stopped") == "true";
  for (std::size_t i = 1; kv.count("artifact." + std::to_string(i) + ".name"); ++i) {
    const std::string key = "artifact." + std::to_string(i);
    r.artifacts.push_back({value(key + ".name"), std::stoul(value(key + ".states")),
                           std::stoul(value(key + ".transitions")), std::stoul(value(key + ".events"))});
  }
  for (std::size_t i = 1; kv.count("check." + std::to_string(i) + ".name"); ++i)
    r.checks.push_back(read_verdict(kv, "check." + std::to_string(i)));
  if (kv.count("equivalence.name")) r.equivalence = read_verdict(kv, "equivalence");
  for (std::size_t i = 1; kv.count("note." + std::to_string(i)); ++i) r.notes.push_back(value("note." + std::to_string(i)));
  r.timings = std::move(timings);
  return r;
}

void write_run(const PipelineResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& s : r.supervisors) save_automaton(dir / (s.name() + ".aut"), s, r.table);
  if (r.monolithic) save_automaton(dir / "S.aut", *r.monolithic, r.table);
  if (r.plan) write_plan(*r.plan, r.table, dir / "plan");
  write_file(dir / "report.txt", emit_report(r.report, ReportFormat::Text));
  write_file(dir / "report.machine", emit_report(r.report, ReportFormat::Machine));
}

}  // namespace modsup
