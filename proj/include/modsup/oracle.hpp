#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "modsup/automaton.hpp"

// Brute-force string-level ground truth. Everything here works on finite
// string sets; the only contact with automata is reading their slices.
namespace modsup::oracle {

struct BoundedLanguage {
  std::set<Word> strings;
  int bound = 0;
  EventSet alphabet;
  bool prefix_closed = false;

  bool contains(const Word& w) const { return strings.count(w) > 0; }
};

/// Marked strings of length <= bound, by direct depth-first walk.
BoundedLanguage marked_slice(const Automaton& a, int bound);
/// Generated strings of length <= bound; flagged prefix-closed.
BoundedLanguage generated_slice(const Automaton& a, int bound);

/// All prefixes of the strings, same bound and alphabet.
BoundedLanguage closure(const BoundedLanguage& l);

/// Largest S ⊆ spec whose prefix closure is normal with respect to `plant`:
/// every plant string observation-equivalent to a prefix of S is a prefix of S.
/// Exact when the plant slice contains all of L.
BoundedLanguage oracle_sup_n(const BoundedLanguage& spec, const BoundedLanguage& plant,
                             const EventSet& observable);
/// Largest S ⊆ spec with closure(S)·Σuc ∩ plant ⊆ closure(S).
BoundedLanguage oracle_sup_c(const BoundedLanguage& spec, const BoundedLanguage& plant,
                             const EventSet& uncontrollable);
/// Both filters applied until neither removes anything.
BoundedLanguage oracle_sup_cn(const BoundedLanguage& spec, const BoundedLanguage& plant,
                              const EventSet& uncontrollable, const EventSet& observable);

/// Strings over the union alphabet of length <= bound whose projections lie in
/// every part.
BoundedLanguage compose(std::span<const BoundedLanguage> parts, int bound);

/// closure(∥ parts) = ∥ closure(parts), compared within `bound`.
bool oracle_nonconflicting(std::span<const BoundedLanguage> parts, int bound);

struct OracleVerdict {
  bool holds = true;
  std::vector<Word> witness;
};

/// Literal triple loop of the MOC definition for module `i`: s and t' range
/// over strings of length <= bound, s' over the composed language within
/// `witness_bound`. `modules` are generated slices of the plants.
OracleVerdict oracle_moc(std::span<const BoundedLanguage> modules, const EventSet& observable, std::size_t i,
                         int bound, int witness_bound);

/// Observer property of the projection onto `target` for the marked language of
/// `g`: s and t range up to `bound`; the continuation u is searched without a
/// length limit.
OracleVerdict brute_observer(const Automaton& g, const EventSet& target, int bound);
/// OCC by inspecting every generated string up to `bound`.
OracleVerdict brute_occ(const Automaton& l, const EventSet& target, const EventSet& uncontrollable, int bound);
/// LCC for every generated string s up to `bound`, with continuations u of
/// length <= `witness_bound`.
OracleVerdict brute_lcc(const Automaton& l, const EventSet& target, const EventSet& uncontrollable, int bound,
                        int witness_bound);

/// Sorted, one string per line; "<eps>" for the empty string.
std::string dump(const BoundedLanguage& l);

}  // namespace modsup::oracle
