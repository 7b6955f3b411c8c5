#pragma once

// Exact linear feasibility over free rational variables, with Farkas
// certificates for infeasible systems.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dorep/rational.hpp"

namespace dorep {

struct LinearConstraint {
  enum class Sense { Equal, AtLeast };

  /// Sparse Σ coeff·x_var; a variable may appear at most once.
  std::vector<std::pair<std::size_t, Rational>> terms;
  Sense sense = Sense::AtLeast;
  Rational rhs;
};

/// Multipliers y, one per constraint, with y ≥ 0 on AtLeast rows,
/// Σ y_k·a_k = 0 and Σ y_k·b_k > 0: the combination reads 0 ≥ positive.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

struct FeasibilityResult {
  std::optional<std::vector<Rational>> solution;
  std::optional<FarkasCertificate> certificate;

  bool feasible() const { return solution.has_value(); }
};

/// Phase-one simplex with Bland's rule in exact arithmetic. Redundant
/// equalities are dropped before pivoting; their multipliers are zero.
FeasibilityResult solve_feasibility(std::size_t num_vars,
                                    const std::vector<LinearConstraint>& constraints);

bool satisfies(const std::vector<Rational>& x, const LinearConstraint& c);

/// Re-derives the contradiction from the multipliers alone.
bool certifies_infeasibility(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                             const FarkasCertificate& cert);

}  // namespace dorep
