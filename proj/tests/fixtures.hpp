#pragma once

// Preference relations shared by several suites: forward-generated ones that
// satisfy every axiom, and hand-built ones that break exactly one.

#include <cstdint>
#include <vector>

#include "dorep/actions.hpp"
#include "dorep/preferences.hpp"
#include "generators.hpp"

namespace fixtures {

using namespace dorep;

/// Centered family from the test generator, uniform π, distinct utilities in [-8, 8].
inline SEURepresentation generated_rep(const Signature& sig, std::uint64_t seed, bool centered = true) {
  Rng rng(seed * 7919 + 1);
  const auto model = canonical_model(sig);
  auto orders = gen::orders(model, rng, centered);
  const auto n = model.size();
  auto u = gen::distinct_utilities(n, rng);
  std::vector<Rational> pi(n, Rational(1, static_cast<unsigned long>(n)));
  auto sm = induce_selection(model, WellOrderFamily(std::move(orders)), rich_menu(sig));
  return SEURepresentation(std::move(sm), std::move(pi), std::move(u));
}

inline PreferenceRelation generated_preferences(const Signature& sig, std::uint64_t seed) {
  const auto rep = generated_rep(sig, seed);
  return generate_preferences(rep, rep.selection().menu());
}

/// One proposition; the {} state's order puts {p} first.
inline SEURepresentation non_centered_rep() {
  const Signature sig({"p"});
  auto sm = induce_selection(canonical_model(sig), WellOrderFamily({{1, 0}, {1, 0}}), rich_menu(sig));
  return SEURepresentation(std::move(sm), {Rational(1, 2), Rational(1, 2)}, {Rational(2), Rational(-3)});
}

inline PreferenceRelation non_centered_preferences() {
  const auto rep = non_centered_rep();
  return generate_preferences(rep, rep.selection().menu());
}

/// u*(W, φ) table with every entry zero.
inline std::vector<std::vector<Rational>> zero_table(const Menu& menu) {
  return std::vector<std::vector<Rational>>(menu.signature().atom_count(),
                                            std::vector<Rational>(menu.size(), Rational(0)));
}

/// Additive over two propositions: only u*({}, {p}∨{q}) = 5 is nonzero.
/// Centering holds because no condition entailing that disjunction contains
/// {}, but conditional on {} the disjunction beats both of its atoms.
inline PreferenceRelation ssc_violation() {
  const auto menu = rich_menu(Signature({"p", "q"}));
  auto table = zero_table(menu);
  table[0][menu.pair_member(Atom{1}, Atom{2})] = 5;
  return gen::additive_partition(menu, table);
}

/// Additive over two propositions: at W = {p}, φ_{} ∨ φ_{q} scores 1 and
/// everything else 0, so {} ⊑ {p} ⊑ {q} but not {} ⊑ {q}.
inline PreferenceRelation trans_violation() {
  const auto menu = rich_menu(Signature({"p", "q"}));
  auto table = zero_table(menu);
  table[1][menu.pair_member(Atom{0}, Atom{2})] = 1;
  return gen::additive_partition(menu, table);
}

/// One proposition; `if p then do(p) else do(!p)` beats every other act,
/// which are all indifferent. Not additive.
inline PreferenceRelation single_best_act() {
  const Signature sig({"p"});
  const auto menu = rich_menu(sig);
  const auto best = compile(parse_action("if p then do(p) else do(!p)", sig), menu);
  const ActSpace space(menu);
  std::vector<std::vector<CompiledAct>> classes{{best}, {}};
  for (const auto& t : space) {
    if (t != best) classes[1].push_back(t);
  }
  return PreferenceRelation::from_partition(menu, classes);
}

/// One proposition; all acts indifferent except a strict 3-cycle among
/// acts that never appear in centering or closeness comparisons.
inline PreferenceRelation cyclic_preferences() {
  const Signature sig({"p"});
  const auto menu = rich_menu(sig);
  const ActSpace space(menu);
  const auto base = PreferenceRelation::from_partition(menu, {std::vector<CompiledAct>(space.begin(), space.end())});
  const auto a = compile(parse_action("if p then do(p) else do(!p)", sig), menu);
  const auto b = compile(parse_action("if p then do(!p) else do(p)", sig), menu);
  const auto c = compile(parse_action("do(p)", sig), menu);
  return base.with_strict(a, b).with_strict(b, c).with_strict(c, a);
}

}  // namespace fixtures
