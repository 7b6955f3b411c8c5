#pragma once

// Checkers for the cancellation, centering, sufficiently-specific-conditions
// and transitivity axioms, plus cheaper consequences of cancellation.
// A failing report carries a witness that re-checks through compare alone.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dorep/actions.hpp"
#include "dorep/preferences.hpp"

namespace dorep {

enum class AxiomId { Cent, Ssc, Trans, Canc, Reflexivity, Transitivity, Independence };

const char* to_string(AxiomId id);

struct Coverage {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t seed = 0;
  /// Individual instances examined.
  std::uint64_t count = 0;
};

/// if ψ then do(φ) ≁ do(true) although ψ ⊨ φ. Members are menu indices.
struct CentWitness {
  std::size_t condition;
  std::size_t effect;
};

/// φ ≡ φ_1 ∨ … ∨ φ_n, yet for every part φ_i some ψ with φ_i ⊨ ψ ⊨ φ has
/// do(ψ) ≁ do(φ_i) conditional on φ_X. `breakers[i]` is that ψ for part i.
struct SscWitness {
  std::size_t whole;
  std::vector<std::size_t> parts;
  Atom atom;
  std::vector<std::size_t> breakers;
};

/// φ_X ⊑_W φ_Y and φ_Y ⊑_W φ_Z but not φ_X ⊑_W φ_Z.
struct TransWitness {
  Atom w, x, y, z;
};

/// Per-atom multisets of the two lists agree, α_i ⪰ β_i for i < n, and β_n ≺ α_n.
struct CancWitness {
  std::vector<CompiledAct> alphas;
  std::vector<CompiledAct> betas;
};

struct ReflexivityWitness {
  CompiledAct act;
};

/// a ⪰ b and b ⪰ c but not a ⪰ c.
struct TransitivityWitness {
  CompiledAct a, b, c;
};

/// The verdict on `if φ then α else γ` vs `if φ then β else γ` changes when γ
/// is replaced by γ′.
struct IndependenceWitness {
  TruthSet condition;
  CompiledAct alpha, beta, gamma, gamma_prime;
};

using Witness = std::variant<CentWitness, SscWitness, TransWitness, CancWitness,
                             ReflexivityWitness, TransitivityWitness, IndependenceWitness>;

struct AxiomReport {
  AxiomId axiom = AxiomId::Cent;
  bool passed = true;
  Coverage coverage;
  std::optional<Witness> witness;
};

/// True when the witness is a genuine violation under `pr`.
bool revalidates(const PreferenceRelation& pr, const Witness& witness);

/// Checks ψ = φ pairs first, then all entailing ordered pairs of members.
AxiomReport check_cent(const PreferenceRelation& pr);

struct SscOptions {
  std::size_t max_parts = 6;
};

/// Throws RichnessViolation for a menu without all atoms and pairs.
AxiomReport check_ssc(const PreferenceRelation& pr, SscOptions options = {});

/// Exhaustive over all (W, X, Y, Z). Throws RichnessViolation.
AxiomReport check_trans(const PreferenceRelation& pr);

struct CancOptions {
  std::size_t max_n = 3;
  std::uint64_t budget = 100'000;
  std::uint64_t seed = 0;
  /// Tables whose two syntactic realizations are compared for the n = 1 case.
  std::size_t equal_table_sample = 200;
};

/// Sampled search for a cancellation violation with 2 ≤ n ≤ max_n; the budget
/// is split evenly across n. Each sampled tuple is tried with every index in
/// the conclusion slot and in both orientations.
AxiomReport check_canc(const PreferenceRelation& pr, CancOptions options);

struct ConsequenceOptions {
  std::size_t sample = 40;
  std::uint64_t independence_samples = 2'000;
  std::uint64_t seed = 0;
};

/// Reflexivity, transitivity over all triples of a sample (which always
/// includes the acts named in strict overrides) and the independence biconditional.
std::vector<AxiomReport> derive_consequences(const PreferenceRelation& pr,
                                             ConsequenceOptions options);

}  // namespace dorep
