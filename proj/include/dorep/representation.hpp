#pragma once

// Synthesis of a language-based SEU representation from a preference
// relation: state-dependent utility by exact LP, per-atom well-orders from
// closeness, the paired-state selection model, and end-to-end verification.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dorep/axioms.hpp"
#include "dorep/feasibility.hpp"
#include "dorep/preferences.hpp"

namespace dorep {

/// u*(W, φ) for every atom W and menu member φ.
class StateDependentUtility {
 public:
  StateDependentUtility(std::size_t atom_count, std::size_t menu_size, std::vector<Rational> values);

  std::size_t atom_count() const { return atom_count_; }
  std::size_t menu_size() const { return menu_size_; }
  const Rational& at(Atom w, std::size_t member) const { return values_.at(w.mask * menu_size_ + member); }
  Rational& at(Atom w, std::size_t member) { return values_.at(w.mask * menu_size_ + member); }
  const std::vector<Rational>& values() const { return values_; }

  /// Σ_X u*(X, f(X)).
  Rational score(const CompiledAct& f) const;

 private:
  std::size_t atom_count_;
  std::size_t menu_size_;
  std::vector<Rational> values_;
};

/// Constraint k encodes `pairs[k].first ⪰ pairs[k].second` (or ∼ for equalities).
struct LpInfeasibility {
  std::vector<LinearConstraint> constraints;
  std::vector<std::pair<CompiledAct, CompiledAct>> pairs;
  FarkasCertificate certificate;
  /// Present when the integer-scaled multipliers fit under the tuple limit.
  std::optional<CancWitness> canc;
};

using StateDependentResult = std::variant<StateDependentUtility, LpInfeasibility>;

struct LpOptions {
  std::uint64_t cap = ActSpace::kDefaultCap;
  /// Largest cancellation tuple produced from a certificate.
  std::uint64_t tuple_limit = 64;
};

/// Constraints come from adjacent acts in the sorted act space: equalities
/// within a class, a gap of at least 1 between consecutive classes. A relation
/// with strict overrides is first scanned for an intransitive triple, whose
/// three comparisons then form the (infeasible) system.
StateDependentResult solve_state_dependent(const PreferenceRelation& pr, LpOptions options = {});

/// Converts Farkas multipliers over act comparisons into a cancellation tuple.
std::optional<CancWitness> certificate_to_canc(const LpInfeasibility& lp, std::uint64_t tuple_limit);

/// ≤_W for each atom W, as atoms from closest to farthest.
using AtomOrders = std::vector<std::vector<Atom>>;

/// Linearizes each ⊑_W with ascending-mask tie breaks. With `centered`, φ_W
/// is moved to the front of its tie class and must be ⊑_W-minimal.
/// Throws NotTotal, NotTransitive, or PreconditionViolation.
AtomOrders extract_well_orders(const PreferenceRelation& pr, bool centered = true);

/// The ≤_W-least atom in `t`. Throws Unsatisfiable for an empty set.
Atom min_choice(const AtomOrders& orders, Atom w, const TruthSet& t);

struct Lemma4Witness {
  Atom w;
  std::size_t member;
};
/// First (W, φ) with do(φ) ≁_W do(φ_{min(W, φ)}).
std::optional<Lemma4Witness> check_lemma4(const PreferenceRelation& pr, const AtomOrders& orders);

struct Lemma5Witness {
  Atom w;
  std::size_t member;
  std::size_t other;
};
/// First (W, φ, φ′) with equal min choices but u*(W, φ) ≠ u*(W, φ′).
std::optional<Lemma5Witness> check_lemma5(const StateDependentUtility& u_star,
                                          const AtomOrders& orders, const Menu& menu);

/// The synthesized representation over Ω = 2^Φ × 2^Φ.
struct BuiltRepresentation {
  SEURepresentation rep;
  AtomOrders orders;
  StateDependentUtility u_star;
  /// state_pairs[s] = (X, W′) for state s.
  std::vector<std::pair<Atom, Atom>> state_pairs;
};

/// State index of (X, W′).
inline std::size_t paired_state(std::size_t atom_count, Atom x, Atom w) {
  return x.mask * atom_count + w.mask;
}

/// Builds the paired model from given orders and u*. Throws InvalidModel if
/// u is not well defined.
BuiltRepresentation build_representation(const Menu& menu, AtomOrders orders,
                                         StateDependentUtility u_star);

/// Solves for u*, extracts orders, builds. Throws Unsatisfiable if the LP is
/// infeasible and propagates extraction errors.
BuiltRepresentation build_representation(const PreferenceRelation& pr, LpOptions options = {});

struct Eq2Witness {
  std::size_t state;
  std::size_t member;
};
/// Checks c((W, W′), φ) = (min(W, φ), W) for every state and member.
std::optional<Eq2Witness> check_eq2(const BuiltRepresentation& built);

struct VerifyOptions {
  std::uint64_t exhaustive_limit = 300;
  std::uint64_t pairs = 10'000;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  bool passed = true;
  Coverage coverage;
  std::optional<std::pair<CompiledAct, CompiledAct>> witness;
};

/// All pairs when the act space has at most `exhaustive_limit` acts, else
/// `pairs` seeded random pairs: the preference verdict must match the sign of
/// the exact expected-utility difference.
VerifyReport verify_representation(const SEURepresentation& rep, const PreferenceRelation& pr,
                                   VerifyOptions options = {});

}  // namespace dorep
