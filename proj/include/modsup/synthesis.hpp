#pragma once

#include <optional>
#include <string>

#include "modsup/automaton.hpp"

namespace modsup {

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

/// Specification K = Lm(spec) against plant L = L(plant). Both automata share
/// one alphabet; `observation` projects it onto the observable events.
struct SynthesisProblem {
  Automaton spec;
  Automaton plant;
  EventSet uncontrollable;
  ProjectionSpec observation;
};

/// Builds a problem from event attributes. The spec must already be over the
/// plant alphabet.
SynthesisProblem make_problem(Automaton spec, Automaton plant, const EventTable& table);

/// Throws InvalidProblem if alphabets disagree or Lm(spec) is not contained in L(plant).
void validate(const SynthesisProblem& p);

struct PredicateResult {
  bool holds = true;
  std::optional<Word> witness;
};

/// K̄ Σuc ∩ L ⊆ K̄; witness is a shortest s·σ escaping K̄.
PredicateResult is_controllable(const SynthesisProblem& p);
/// K̄ = P⁻¹P(K̄) ∩ L; witness is a shortest string of the right side outside K̄.
PredicateResult is_normal(const SynthesisProblem& p);

Automaton sup_n(const SynthesisProblem& p);
Automaton sup_c(const SynthesisProblem& p);
Automaton sup_cn(const SynthesisProblem& p);

enum class SynthesisKind { Normal, Controllable, ControllableNormal };

std::string to_string(SynthesisKind kind);
SynthesisKind parse_synthesis_kind(const std::string& text);
Automaton synthesize(SynthesisKind kind, const SynthesisProblem& p);

struct ClosedLoop {
  Automaton automaton;
  bool nonblocking = true;
};

/// Supervisor realized as an automaton: the closed loop is its composition with the plant.
ClosedLoop closed_loop(const Automaton& supervisor, const Automaton& plant);

}  // namespace modsup
