#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "modsup/automaton.hpp"

namespace modsup {

/// Composite state labels longer than `cap` are truncated and suffixed with a
/// stable hash of the full label.
struct LabelOptions {
  std::size_t cap = 64;
};

std::string capped_label(const std::string& full, const LabelOptions& opts = {});

/// Restricts to states reachable from the initial state, renumbered in BFS order.
Automaton accessible(const Automaton& a);

/// Reachable and co-reachable part. Returns Automaton::empty when the initial
/// state cannot reach a marked state.
Automaton trim(const Automaton& a);

/// Synchronous product; alphabet is the union of the inputs.
Automaton parallel(std::span<const Automaton> parts, const LabelOptions& opts = {});
Automaton parallel(const Automaton& a, const Automaton& b, const LabelOptions& opts = {});

/// Natural projection via subset construction. `p.source()` must equal the
/// automaton alphabet.
Automaton project(const Automaton& a, const ProjectionSpec& p, const LabelOptions& opts = {});
/// Projection onto `target ∩ alphabet(a)`.
Automaton project_onto(const Automaton& a, const EventSet& target, const LabelOptions& opts = {});

/// Inverse projection: self-loops on `source \ target` at every state.
/// `p.target()` must equal the automaton alphabet.
Automaton inverse_project(const Automaton& a, const ProjectionSpec& p);

/// Marked language Lm(a) \ Lm(b); generated language L(a). Same alphabet required.
Automaton difference(const Automaton& a, const Automaton& b);

/// Marks every state: Lm = L.
Automaton mark_all(const Automaton& a);

/// Marks every state that can reach a marked state: Lm becomes its prefix closure.
Automaton prefix_closure(const Automaton& a);

struct SideComparison {
  bool holds = true;
  /// Shortest string distinguishing the two sides, when `holds` is false.
  std::optional<Word> witness;
};

struct LanguageComparison {
  SideComparison marked;
  SideComparison generated;
  bool holds() const { return marked.holds && generated.holds; }
};

/// Throws AlphabetMismatch unless both alphabets coincide.
LanguageComparison language_equal(const Automaton& a, const Automaton& b);
LanguageComparison language_subset(const Automaton& a, const Automaton& b);

bool is_nonblocking(const Automaton& a);
bool is_prefix_closed(const Automaton& a);
bool marks_nothing(const Automaton& a);

/// Shortest string of ∥ closure(Lm) that cannot be extended to the composed
/// marked language, or nullopt when the inputs are nonconflicting.
std::optional<Word> find_conflict(std::span<const Automaton> parts);
bool is_nonconflicting(std::span<const Automaton> parts);

struct EnumeratedLanguage {
  std::set<Word> marked;
  std::set<Word> generated;
};

/// All strings of length <= bound.
EnumeratedLanguage enumerate_language(const Automaton& a, std::size_t bound);

/// Minimal DFA preserving both the generated and the marked language.
Automaton minimize(const Automaton& a);

/// States that can reach a marked state.
std::vector<char> coreachable_states(const Automaton& a);

/// Keeps the states flagged in `keep` (indexed by state) and their reachable
/// part. Returns Automaton::empty when the initial state is dropped.
Automaton restrict_states(const Automaton& a, const std::vector<char>& keep);

/// Shortest access word of every state, in breadth-first event order;
/// unreachable states map to nullopt.
std::vector<std::optional<Word>> access_words(const Automaton& a);

/// Copy with a different name.
Automaton renamed(Automaton a, std::string name);

}  // namespace modsup
