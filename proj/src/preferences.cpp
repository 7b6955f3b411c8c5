#include "dorep/preferences.hpp"

#include <algorithm>
#include <numeric>

#include "dorep/error.hpp"

namespace dorep {

SEURepresentation::SEURepresentation(SelectionModel sm, std::vector<Rational> probability,
                                     std::vector<Rational> utility)
    : sm_(std::move(sm)), prob_(std::move(probability)), util_(std::move(utility)) {
  const std::size_t n = sm_.model().size();
  if (prob_.size() != n || util_.size() != n) {
    throw Error(ErrorKind::InvalidModel, "probability and utility need one entry per state");
  }
  Rational total = 0;
  for (const auto& p : prob_) {
    if (sgn(p) < 0) throw Error(ErrorKind::InvalidModel, "probabilities must be nonnegative");
    total += p;
  }
  if (total != 1) {
    throw Error(ErrorKind::InvalidModel, "probabilities sum to " + to_string(total) + ", not 1");
  }
}

Rational SEURepresentation::expected_utility(const CompiledAct& f) const {
  const auto& model = sm_.model();
  Rational eu = 0;
  for (std::size_t s = 0; s < model.size(); ++s) {
    if (sgn(prob_[s]) == 0) continue;
    eu += prob_[s] * util_[sm_.select(s, f[model.atom_of(s)])];
  }
  return eu;
}

Rational SEURepresentation::expected_utility(const Action& act) const {
  const auto image = interpret(act, sm_);
  Rational eu = 0;
  for (std::size_t s = 0; s < image.size(); ++s) eu += prob_[s] * util_[image[s]];
  return eu;
}

// ---------------------------------------------------------------------------

namespace {

void check_table(const CompiledAct& f, const Menu& menu) {
  if (f.choice.size() != menu.signature().atom_count()) {
    throw Error(ErrorKind::InvalidPreference, "act table has the wrong number of atoms");
  }
  for (auto c : f.choice) {
    if (c >= menu.size()) throw Error(ErrorKind::InvalidPreference, "act table names a non-member");
  }
}

std::weak_ordering from_sign(int s) {
  return s > 0 ? std::weak_ordering::greater
               : (s < 0 ? std::weak_ordering::less : std::weak_ordering::equivalent);
}

}  // namespace

PreferenceRelation PreferenceRelation::from_partition(
    Menu menu, const std::vector<std::vector<CompiledAct>>& classes, std::uint64_t cap) {
  PreferenceRelation pr(std::move(menu));
  pr.space_.emplace(pr.menu_, cap);
  const auto& space = *pr.space_;
  constexpr auto kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> rank(space.size(), kUnset);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw Error(ErrorKind::InvalidPreference, "empty preference class");
    for (const auto& f : classes[c]) {
      check_table(f, pr.menu_);
      auto& slot = rank[space.index_of(f)];
      if (slot != kUnset && slot != c) {
        throw Error(ErrorKind::InvalidPreference,
                    "act '" + canonical_act(f, pr.menu_).to_string() +
                        "' appears in more than one class");
      }
      slot = static_cast<std::uint32_t>(c);
    }
  }
  auto missing = std::find(rank.begin(), rank.end(), kUnset);
  if (missing != rank.end()) {
    auto f = space.at(static_cast<std::uint64_t>(missing - rank.begin()));
    throw Error(ErrorKind::InvalidPreference,
                "partition does not rank act '" + canonical_act(f, pr.menu_).to_string() + "'");
  }
  pr.rank_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(rank));
  return pr;
}

PreferenceRelation PreferenceRelation::from_scores(Menu menu, ScoreFn score,
                                                   std::uint64_t cache_cap) {
  PreferenceRelation pr(std::move(menu));
  pr.score_ = std::move(score);
  auto n = ActSpace::cardinality(pr.menu_.size(), pr.menu_.signature().atom_count());
  if (n && *n <= cache_cap) {
    pr.space_.emplace(pr.menu_, cache_cap);
    std::vector<Rational> cache;
    cache.reserve(pr.space_->size());
    for (const auto& f : *pr.space_) cache.push_back(pr.score_(f));
    pr.score_cache_ = std::make_shared<const std::vector<Rational>>(std::move(cache));
  }
  return pr;
}

PreferenceRelation PreferenceRelation::with_strict(const CompiledAct& better,
                                                   const CompiledAct& worse) const {
  check_table(better, menu_);
  check_table(worse, menu_);
  if (better == worse) {
    throw Error(ErrorKind::InvalidPreference, "an act cannot be strictly better than itself");
  }
  PreferenceRelation pr = *this;
  pr.overrides_[{better, worse}] = 1;
  pr.overrides_[{worse, better}] = -1;
  return pr;
}

std::vector<std::pair<CompiledAct, CompiledAct>> PreferenceRelation::strict_overrides() const {
  std::vector<std::pair<CompiledAct, CompiledAct>> out;
  for (const auto& [pair, verdict] : overrides_) {
    if (verdict > 0) out.push_back(pair);
  }
  return out;
}

Rational PreferenceRelation::score_of(const CompiledAct& f) const {
  if (score_cache_) return (*score_cache_)[space_->index_of(f)];
  return score_(f);
}

std::weak_ordering PreferenceRelation::compare_base(const CompiledAct& a,
                                                    const CompiledAct& b) const {
  if (rank_) {
    const auto ra = (*rank_)[space_->index_of(a)];
    const auto rb = (*rank_)[space_->index_of(b)];
    return rb <=> ra;
  }
  if (score_cache_) {
    const auto& sa = (*score_cache_)[space_->index_of(a)];
    const auto& sb = (*score_cache_)[space_->index_of(b)];
    return from_sign(cmp(sa, sb));
  }
  return from_sign(cmp(score_(a), score_(b)));
}

std::weak_ordering PreferenceRelation::compare(const CompiledAct& a, const CompiledAct& b) const {
  if (!overrides_.empty()) {
    auto it = overrides_.find({a, b});
    if (it != overrides_.end()) return from_sign(it->second);
  }
  return compare_base(a, b);
}

std::weak_ordering PreferenceRelation::compare(const Action& a, const Action& b) const {
  return compare(compile(a, menu_), compile(b, menu_));
}

std::vector<std::vector<std::uint64_t>> PreferenceRelation::base_classes(
    const ActSpace& space) const {
  std::vector<std::vector<std::uint64_t>> classes;
  if (rank_ && space_ && space_->size() == space.size()) {
    std::uint32_t top = 0;
    for (auto r : *rank_) top = std::max(top, r);
    classes.resize(rank_->empty() ? 0 : top + 1);
    for (std::uint64_t i = 0; i < rank_->size(); ++i) classes[(*rank_)[i]].push_back(i);
    return classes;
  }
  std::vector<Rational> scores;
  if (score_cache_ && space_ && space_->size() == space.size()) {
    scores = *score_cache_;
  } else {
    scores.reserve(space.size());
    for (const auto& f : space) scores.push_back(score_(f));
  }
  std::vector<std::uint64_t> order(space.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return scores[a] > scores[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || scores[order[i]] != scores[order[i - 1]]) classes.emplace_back();
    classes.back().push_back(order[i]);
  }
  return classes;
}

// ---------------------------------------------------------------------------

std::weak_ordering compare(const PreferenceRelation& pr, const Action& a, const Action& b) {
  return pr.compare(a, b);
}

std::weak_ordering conditional_compare(const PreferenceRelation& pr, const TruthSet& condition,
                                       const CompiledAct& a, const CompiledAct& b) {
  const auto& menu = pr.menu();
  return pr.compare(guarded_act(menu, condition, a), guarded_act(menu, condition, b));
}

std::weak_ordering conditional_compare(const PreferenceRelation& pr, const Formula& condition,
                                       const Action& a, const Action& b) {
  return pr.compare(Action::guarded(condition, a), Action::guarded(condition, b));
}

bool closeness(const PreferenceRelation& pr, Atom w, Atom x, Atom y) {
  const auto& menu = pr.menu();
  menu.require_rich();
  if (x == y) return true;
  const auto w_only = TruthSet::singleton(menu.signature().atom_count(), w);
  return conditional_compare(pr, w_only, constant_act(menu, menu.pair_member(x, y)),
                             constant_act(menu, menu.atom_member(x))) == 0;
}

PreferenceRelation generate_preferences(const SEURepresentation& rep, const Menu& menu,
                                        std::uint64_t cache_cap) {
  if (!(rep.selection().menu() == menu)) {
    throw Error(ErrorKind::FRichnessViolation,
                "representation's selection function is defined for a different menu");
  }
  require_f_rich(rep.selection().model(), menu);
  auto shared = std::make_shared<const SEURepresentation>(rep);
  return PreferenceRelation::from_scores(
      menu, [shared](const CompiledAct& f) { return shared->expected_utility(f); }, cache_cap);
}

}  // namespace dorep
