#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modsup/checks.hpp"
#include "modsup/coordination.hpp"
#include "modsup/synthesis.hpp"

namespace modsup {

enum class Mode { LocalSpecs, GlobalSpec };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct PipelineOptions {
  SynthesisKind synthesis = SynthesisKind::Normal;
  std::optional<int> moc_bound;
  bool verify_monolithic = false;
  /// Replace every L_i by P_i(L) when the two differ.
  bool repair_locals = false;
  /// Intersect specifications with their plants instead of rejecting them.
  bool intersect_spec = false;
  bool minimize = false;
  /// Check OCC instead of LCC on the observer route.
  bool use_occ = false;
  std::optional<EventSet> kappa;
};

/// Flat key=value project file; repeated keys build lists, paths are relative
/// to the manifest.
struct ProjectManifest {
  std::string name;
  Mode mode = Mode::LocalSpecs;
  std::vector<std::filesystem::path> plants;
  std::vector<std::filesystem::path> specs;
  std::optional<std::filesystem::path> global_spec;
  PipelineOptions options;
};

ProjectManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                               const std::string& name = "project");
ProjectManifest load_manifest(const std::filesystem::path& path);

/// Loads every referenced file and merges the event declarations. Throws
/// ParseError or Error on unreadable files and attribute conflicts.
ModularSystem load_system(const ProjectManifest& p);

struct ArtifactStats {
  std::string name;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t events = 0;
};

struct Timing {
  std::string stage;
  double ms = 0.0;
};

struct SynthesisReport {
  std::string project;
  std::string mode;
  std::string synthesis;
  std::size_t modules = 0;
  std::vector<ArtifactStats> artifacts;
  std::vector<CheckVerdict> checks;
  std::optional<CheckVerdict> equivalence;
  /// Name of the discharged hypothesis set; empty when not certified.
  std::string route;
  bool stopped = false;
  std::vector<std::string> notes;
  std::vector<Timing> timings;

  bool certified() const { return !route.empty(); }
  /// 0 certified, 1 uncertified, 2 equivalence failure.
  int exit_code() const;
  const CheckVerdict* find_check(const std::string& name) const;
};

struct PipelineResult {
  SynthesisReport report;
  EventTable table;
  std::vector<Automaton> supervisors;
  std::optional<Automaton> monolithic;
  std::optional<CoordinationPlan> plan;
};

PipelineResult run_local_mode(const ModularSystem& m, const PipelineOptions& o, const std::string& project = "memory");
PipelineResult run_global_mode(const ModularSystem& m, const PipelineOptions& o,
                               const std::string& project = "memory");
PipelineResult run_project(const ProjectManifest& p);

/// Marked-language equality of ∥ locals with the monolithic supervisor; the
/// note says on which side the shortest witness lies.
CheckVerdict verify_equivalence(std::span<const Automaton> locals, const Automaton& monolithic);

enum class ReportFormat { Text, Machine };

/// Deterministic; every timing value sits on its own line containing "_ms=".
std::string emit_report(const SynthesisReport& r, ReportFormat format);
SynthesisReport parse_machine_report(std::string_view text);

/// Supervisors, monolithic supervisor, coordination plan and both report formats.
void write_run(const PipelineResult& r, const std::filesystem::path& dir);

}  // namespace modsup
