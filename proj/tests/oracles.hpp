#pragma once

// Brute-force reference implementations used to cross-check the library.
// They walk syntax trees and truth tables directly and never call the
// library's compiled tables, selection tables or scores.

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "dorep/actions.hpp"
#include "dorep/feasibility.hpp"
#include "dorep/logic.hpp"
#include "dorep/models.hpp"
#include "dorep/preferences.hpp"
#include "dorep/rational.hpp"

namespace oracle {

using dorep::Action;
using dorep::Formula;
using dorep::Rational;

/// Assignment as one bool per proposition.
inline std::vector<bool> assignment(std::uint32_t mask, std::size_t props) {
  std::vector<bool> v(props);
  for (std::size_t i = 0; i < props; ++i) v[i] = (mask >> i) & 1u;
  return v;
}

inline bool eval(const Formula& f, const std::vector<bool>& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Prop: return v.at(f.prop_index());
    case K::Not: return !eval(f.lhs(), v);
    case K::And: return eval(f.lhs(), v) && eval(f.rhs(), v);
    case K::Or: return eval(f.lhs(), v) || eval(f.rhs(), v);
    case K::Implies: return !eval(f.lhs(), v) || eval(f.rhs(), v);
    case K::Iff: return eval(f.lhs(), v) == eval(f.rhs(), v);
  }
  return false;
}

/// truth[m] is the value of f under the assignment with mask m.
inline std::vector<bool> truth_table(const Formula& f, std::size_t props) {
  std::vector<bool> t(std::size_t{1} << props);
  for (std::uint32_t m = 0; m < t.size(); ++m) t[m] = eval(f, assignment(m, props));
  return t;
}

inline bool entails(const Formula& a, const Formula& b, std::size_t props) {
  const auto ta = truth_table(a, props);
  const auto tb = truth_table(b, props);
  for (std::size_t m = 0; m < ta.size(); ++m) {
    if (ta[m] && !tb[m]) return false;
  }
  return true;
}

/// Position of `f` in the menu by structural equality, linear scan.
inline std::size_t member_of(const dorep::Menu& menu, const Formula& f) {
  const auto& fs = menu.formulas();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i] == f) return i;
  }
  return fs.size();
}

/// f_α(X) by the recursion, one atom at a time. Returns menu.size() for a
/// non-member effect.
inline std::size_t compile_at(const Action& a, std::uint32_t mask, const dorep::Menu& menu) {
  const std::size_t props = menu.signature().size();
  switch (a.kind()) {
    case Action::Kind::Do: return member_of(menu, a.formula());
    case Action::Kind::IfThenElse:
      return eval(a.formula(), assignment(mask, props)) ? compile_at(a.first(), mask, menu)
                                                         : compile_at(a.second(), mask, menu);
    case Action::Kind::Seq: break;
  }
  return menu.size() + 1;
}

inline std::vector<std::size_t> compile(const Action& a, const dorep::Menu& menu) {
  std::vector<std::size_t> table(menu.signature().atom_count());
  for (std::uint32_t m = 0; m < table.size(); ++m) table[m] = compile_at(a, m, menu);
  return table;
}

/// World given by atom masks per state and per-state rankings (best first).
struct World {
  std::size_t props;
  std::vector<std::uint32_t> atoms;
  std::vector<std::vector<std::size_t>> orders;
};

inline World world_of(const dorep::BasicModel& model, const std::vector<std::vector<std::size_t>>& orders) {
  World w{model.signature().size(), {}, orders};
  for (std::size_t s = 0; s < model.size(); ++s) w.atoms.push_back(model.atom_of(s).mask);
  return w;
}

/// The first state in order(ω) satisfying φ.
inline std::size_t closest(const World& w, std::size_t state, const Formula& f) {
  for (std::size_t s : w.orders.at(state)) {
    if (eval(f, assignment(w.atoms[s], w.props))) return s;
  }
  return w.atoms.size();
}

inline std::size_t interpret_at(const Action& a, std::size_t state, const World& w) {
  switch (a.kind()) {
    case Action::Kind::Do: return closest(w, state, a.formula());
    case Action::Kind::IfThenElse:
      return eval(a.formula(), assignment(w.atoms[state], w.props)) ? interpret_at(a.first(), state, w)
                                                                    : interpret_at(a.second(), state, w);
    case Action::Kind::Seq: return interpret_at(a.second(), interpret_at(a.first(), state, w), w);
  }
  return w.atoms.size();
}

inline std::vector<std::size_t> interpret(const Action& a, const World& w) {
  std::vector<std::size_t> image(w.atoms.size());
  for (std::size_t s = 0; s < image.size(); ++s) image[s] = interpret_at(a, s, w);
  return image;
}

inline Rational expected_utility(const Action& a, const World& w, const std::vector<Rational>& pi,
                                 const std::vector<Rational>& u) {
  Rational total = 0;
  for (std::size_t s = 0; s < w.atoms.size(); ++s) total += pi[s] * u[interpret_at(a, s, w)];
  return total;
}

/// Cancellation witness validity straight from the definition: per-atom
/// multisets agree, α_i ⪰ β_i before the last index and α_n ≻ β_n.
inline bool canc_violation(const dorep::PreferenceRelation& pr, const std::vector<dorep::CompiledAct>& alphas,
                           const std::vector<dorep::CompiledAct>& betas) {
  if (alphas.empty() || alphas.size() != betas.size()) return false;
  const std::size_t atoms = alphas[0].choice.size();
  for (std::size_t x = 0; x < atoms; ++x) {
    std::map<std::uint32_t, int> balance;
    for (const auto& a : alphas) ++balance[a.choice[x]];
    for (const auto& b : betas) --balance[b.choice[x]];
    for (const auto& [member, c] : balance) {
      if (c != 0) return false;
    }
  }
  const std::size_t n = alphas.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pr.compare(alphas[i], betas[i]) < 0) return false;
  }
  return pr.compare(alphas[n - 1], betas[n - 1]) > 0;
}

/// Σ y·a = 0 and Σ y·b > 0 with y ≥ 0 on inequalities, recomputed densely.
inline bool farkas_holds(std::size_t vars, const std::vector<dorep::LinearConstraint>& cs,
                         const std::vector<Rational>& y) {
  if (y.size() != cs.size()) return false;
  std::vector<Rational> combo(vars, Rational(0));
  Rational rhs = 0;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k].sense == dorep::LinearConstraint::Sense::AtLeast && y[k] < 0) return false;
    for (const auto& [v, c] : cs[k].terms) combo.at(v) += y[k] * c;
    rhs += y[k] * cs[k].rhs;
  }
  return std::all_of(combo.begin(), combo.end(), [](const Rational& q) { return q == 0; }) && rhs > 0;
}

}  // namespace oracle
