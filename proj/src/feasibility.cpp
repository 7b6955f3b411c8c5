#include "dorep/feasibility.hpp"

#include <cstdint>

#include "dorep/error.hpp"

namespace dorep {

namespace {

// ---------------------------------------------------------------------------
// Selection of a maximal independent subset of the equality rows.

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const auto x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

// Row [a | b] scaled to integers, reduced mod p. The right-hand side is the
// last entry, so only rows redundant together with their rhs are dropped; an
// inconsistent copy of an earlier row is kept and makes phase one infeasible.
std::vector<std::uint64_t> to_modular(const LinearConstraint& c, std::size_t n) {
  mpz_class lcm = c.rhs.get_den();
  for (const auto& [var, coeff] : c.terms) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeff.get_den_mpz_t());
  std::vector<std::uint64_t> row(n + 1, 0);
  auto reduce = [&](const Rational& q) {
    mpz_class v = q.get_num() * (lcm / q.get_den());
    return mpz_fdiv_ui(v.get_mpz_t(), kPrime);
  };
  for (const auto& [var, coeff] : c.terms) row[var] = reduce(coeff);
  row[n] = reduce(c.rhs);
  return row;
}

// Modular elimination: independent mod p implies independent over Q, so the
// kept rows are always independent; a row that is dependent mod p but not over
// Q is caught when the final solution is checked against every constraint.
std::vector<std::size_t> independent_rows_modular(const std::vector<LinearConstraint>& rows,
                                                  const std::vector<std::size_t>& candidates,
                                                  std::size_t n) {
  const std::size_t width = n + 1;
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::vector<std::size_t>> support;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> kept;
  for (auto idx : candidates) {
    if (basis.size() == width) break;
    auto v = to_modular(rows[idx], n);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t f = v[pivots[b]];
      if (f == 0) continue;
      for (auto j : support[b]) {
        const std::uint64_t d = mul_mod(f, basis[b][j]);
        v[j] = v[j] >= d ? v[j] - d : v[j] + kPrime - d;
      }
    }
    std::size_t p = 0;
    while (p < width && v[p] == 0) ++p;
    if (p == width) continue;
    const std::uint64_t inv = inv_mod(v[p]);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j) {
      if (v[j] == 0) continue;
      v[j] = mul_mod(v[j], inv);
      nz.push_back(j);
    }
    basis.push_back(std::move(v));
    support.push_back(std::move(nz));
    pivots.push_back(p);
    kept.push_back(idx);
  }
  return kept;
}

std::vector<std::size_t> independent_rows_exact(const std::vector<LinearConstraint>& rows,
                                                const std::vector<std::size_t>& candidates,
                                                std::size_t n) {
  const std::size_t width = n + 1;
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> kept;
  for (auto idx : candidates) {
    if (basis.size() == width) break;
    std::vector<Rational> v(width);
    for (const auto& [var, coeff] : rows[idx].terms) v[var] = coeff;
    v[n] = rows[idx].rhs;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (sgn(v[pivots[b]]) == 0) continue;
      const Rational f = v[pivots[b]];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(basis[b][j]) != 0) v[j] -= f * basis[b][j];
      }
    }
    std::size_t p = 0;
    while (p < width && sgn(v[p]) == 0) ++p;
    if (p == width) continue;
    const Rational inv = 1 / v[p];
    for (auto& e : v) e *= inv;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    kept.push_back(idx);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Phase-one simplex.

class PhaseOne {
 public:
  PhaseOne(std::size_t num_vars, const std::vector<LinearConstraint>& all,
           const std::vector<std::size_t>& rows)
      : d_(num_vars), m_(rows.size()) {
    for (auto r : rows) {
      if (all[r].sense == LinearConstraint::Sense::AtLeast) ++slacks_;
    }
    cols_ = 2 * d_ + slacks_ + m_;
    width_ = cols_ + 1;
    t_.assign(m_ * width_, Rational(0));
    obj_.assign(width_, Rational(0));
    sign_.assign(m_, 1);
    basis_.resize(m_);

    std::size_t slack = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& c = all[rows[i]];
      const int s = sgn(c.rhs) < 0 ? -1 : 1;
      sign_[i] = s;
      for (const auto& [var, coeff] : c.terms) {
        at(i, var) = s * coeff;
        at(i, d_ + var) = -s * coeff;
      }
      if (c.sense == LinearConstraint::Sense::AtLeast) {
        at(i, 2 * d_ + slack) = -s;
        ++slack;
      }
      at(i, artificial(i)) = 1;
      at(i, cols_) = s * c.rhs;
      basis_[i] = artificial(i);
    }
    for (std::size_t j = 0; j < width_; ++j) {
      if (j >= 2 * d_ + slacks_ && j < cols_) continue;
      Rational sum = 0;
      for (std::size_t i = 0; i < m_; ++i) sum += at(i, j);
      obj_[j] = -sum;
    }
  }

  void run() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(obj_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rational ratio = at(i, cols_) / at(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero, so some row always limits the step.
      if (leave == m_) throw Error(ErrorKind::PreconditionViolation, "unbounded phase-one pivot");
      pivot(leave, enter);
    }
  }

  Rational objective() const { return -obj_[cols_]; }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(d_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto b = basis_[i];
      if (b < d_) x[b] += at(i, cols_);
      else if (b < 2 * d_) x[b - d_] -= at(i, cols_);
    }
    return x;
  }

  /// Multipliers for the original (unsigned) rows.
  std::vector<Rational> duals() const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = sign_[i] * (1 - obj_[artificial(i)]);
    return y;
  }

 private:
  std::size_t artificial(std::size_t i) const { return 2 * d_ + slacks_ + i; }
  Rational& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / at(row, col);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(at(row, j)) != 0) {
        at(row, j) *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](Rational* r) {
      if (sgn(r[col]) == 0) return;
      const Rational f = r[col];
      for (auto j : nz) r[j] -= f * at(row, j);
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != row) eliminate(&t_[i * width_]);
    }
    eliminate(obj_.data());
    basis_[row] = col;
  }

  std::size_t d_;
  std::size_t m_;
  std::size_t slacks_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::vector<Rational> t_;
  std::vector<Rational> obj_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
};

FeasibilityResult solve_with(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                             bool exact_selection) {
  std::vector<std::size_t> equalities;
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (constraints[k].sense == LinearConstraint::Sense::Equal) equalities.push_back(k);
  }
  rows = exact_selection ? independent_rows_exact(constraints, equalities, num_vars)
                         : independent_rows_modular(constraints, equalities, num_vars);
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (constraints[k].sense == LinearConstraint::Sense::AtLeast) rows.push_back(k);
  }

  PhaseOne lp(num_vars, constraints, rows);
  lp.run();
  FeasibilityResult result;
  if (sgn(lp.objective()) == 0) {
    result.solution = lp.solution();
    return result;
  }
  FarkasCertificate cert;
  cert.multipliers.assign(constraints.size(), Rational(0));
  const auto y = lp.duals();
  for (std::size_t i = 0; i < rows.size(); ++i) cert.multipliers[rows[i]] = y[i];
  result.certificate = std::move(cert);
  return result;
}

}  // namespace

bool satisfies(const std::vector<Rational>& x, const LinearConstraint& c) {
  Rational lhs = 0;
  for (const auto& [var, coeff] : c.terms) lhs += coeff * x.at(var);
  return c.sense == LinearConstraint::Sense::Equal ? lhs == c.rhs : lhs >= c.rhs;
}

bool certifies_infeasibility(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                             const FarkasCertificate& cert) {
  if (cert.multipliers.size() != constraints.size()) return false;
  std::vector<Rational> combo(num_vars);
  Rational bound = 0;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& y = cert.multipliers[k];
    if (constraints[k].sense == LinearConstraint::Sense::AtLeast && sgn(y) < 0) return false;
    if (sgn(y) == 0) continue;
    for (const auto& [var, coeff] : constraints[k].terms) {
      if (var >= num_vars) return false;
      combo[var] += y * coeff;
    }
    bound += y * constraints[k].rhs;
  }
  for (const auto& c : combo) {
    if (sgn(c) != 0) return false;
  }
  return sgn(bound) > 0;
}

FeasibilityResult solve_feasibility(std::size_t num_vars,
                                    const std::vector<LinearConstraint>& constraints) {
  for (const auto& c : constraints) {
    for (const auto& [var, coeff] : c.terms) {
      if (var >= num_vars) throw Error(ErrorKind::PreconditionViolation, "constraint names an unknown variable");
    }
  }
  auto valid = [&](const FeasibilityResult& r) {
    if (!r.feasible()) return certifies_infeasibility(num_vars, constraints, *r.certificate);
    for (const auto& c : constraints) {
      if (!satisfies(*r.solution, c)) return false;
    }
    return true;
  };
  auto result = solve_with(num_vars, constraints, false);
  if (valid(result)) return result;
  result = solve_with(num_vars, constraints, true);
  if (!valid(result)) throw Error(ErrorKind::PreconditionViolation, "feasibility solver produced an invalid answer");
  return result;
}

}  // namespace dorep
