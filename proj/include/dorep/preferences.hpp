#pragma once

// Preference relations over compiled acts, conditional preference, the
// closeness relation between atoms, and expected-utility representations.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dorep/actions.hpp"
#include "dorep/models.hpp"
#include "dorep/rational.hpp"

namespace dorep {

/// Selection model plus probability π and state utility u. π is nonnegative
/// and sums to exactly one.
class SEURepresentation {
 public:
  SEURepresentation(SelectionModel sm, std::vector<Rational> probability,
                    std::vector<Rational> utility);

  const SelectionModel& selection() const { return sm_; }
  const std::vector<Rational>& probability() const { return prob_; }
  const std::vector<Rational>& utility() const { return util_; }

  /// Σ_ω π(ω)·u(⟦α_f⟧(ω)) for the canonical act realizing `f`.
  Rational expected_utility(const CompiledAct& f) const;
  /// Σ_ω π(ω)·u(⟦α⟧(ω)); accepts sequential actions.
  Rational expected_utility(const Action& act) const;

 private:
  SelectionModel sm_;
  std::vector<Rational> prob_;
  std::vector<Rational> util_;
};

/// A complete relation ⪰ on compiled acts.
///
/// The base relation is a total preorder given either as an ordered partition
/// of the act space (best class first) or as a score function. Individual
/// ordered pairs can be overridden with a strict verdict, which is how
/// intransitive relations are expressed; overrides are stored for both
/// orientations.
class PreferenceRelation {
 public:
  using ScoreFn = std::function<Rational(const CompiledAct&)>;

  /// Every table of the act space must occur in exactly one class.
  static PreferenceRelation from_partition(Menu menu,
                                           const std::vector<std::vector<CompiledAct>>& classes,
                                           std::uint64_t cap = ActSpace::kDefaultCap);
  /// Higher score is better. When the act space fits under `cache_cap`, all
  /// scores are evaluated once up front.
  static PreferenceRelation from_scores(Menu menu, ScoreFn score,
                                        std::uint64_t cache_cap = ActSpace::kDefaultCap);

  PreferenceRelation with_strict(const CompiledAct& better, const CompiledAct& worse) const;

  const Menu& menu() const { return menu_; }
  bool scored() const { return static_cast<bool>(score_); }
  bool has_overrides() const { return !overrides_.empty(); }
  /// (better, worse) pairs in insertion-independent order.
  std::vector<std::pair<CompiledAct, CompiledAct>> strict_overrides() const;

  std::weak_ordering compare(const CompiledAct& a, const CompiledAct& b) const;
  std::weak_ordering compare(const Action& a, const Action& b) const;
  bool at_least(const CompiledAct& a, const CompiledAct& b) const { return compare(a, b) >= 0; }

  /// Orders the base relation; larger is better. Ignores overrides.
  std::weak_ordering compare_base(const CompiledAct& a, const CompiledAct& b) const;
  /// The base relation's classes, best first, as act-space indices.
  std::vector<std::vector<std::uint64_t>> base_classes(const ActSpace& space) const;

 private:
  PreferenceRelation(Menu menu) : menu_(std::move(menu)) {}
  Rational score_of(const CompiledAct& f) const;

  Menu menu_;
  std::optional<ActSpace> space_;
  // Partition form: class rank per act-space index, 0 is best.
  std::shared_ptr<const std::vector<std::uint32_t>> rank_;
  // Scored form.
  ScoreFn score_;
  std::shared_ptr<const std::vector<Rational>> score_cache_;
  // +1: first strictly better, -1: first strictly worse.
  std::map<std::pair<CompiledAct, CompiledAct>, int> overrides_;
};

/// Compiles both actions and compares their tables.
std::weak_ordering compare(const PreferenceRelation& pr, const Action& a, const Action& b);

/// α ⪰_φ β: compares `if φ then α` with `if φ then β`, both with else do(true).
std::weak_ordering conditional_compare(const PreferenceRelation& pr, const Formula& condition,
                                       const Action& a, const Action& b);
std::weak_ordering conditional_compare(const PreferenceRelation& pr, const TruthSet& condition,
                                       const CompiledAct& a, const CompiledAct& b);

/// φ_X ⊑_W φ_Y: do(φ_X ∨ φ_Y) ∼_W do(φ_X). Requires a rich menu.
bool closeness(const PreferenceRelation& pr, Atom w, Atom x, Atom y);

/// Scored relation given by expected utility under `rep`. `menu` must be the
/// representation's menu.
PreferenceRelation generate_preferences(const SEURepresentation& rep, const Menu& menu,
                                        std::uint64_t cache_cap = ActSpace::kDefaultCap);

}  // namespace dorep
