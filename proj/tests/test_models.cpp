#include <doctest.h>

#include <bit>

#include "dorep/error.hpp"
#include "dorep/models.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dorep;

namespace {

const Signature kP({"p"});
const Signature kPQ({"p", "q"});

Formula f(std::string_view text, const Signature& sig = kPQ) { return parse_formula(text, sig); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

// {p,q} < {p} < {q} < {} at base {p,q}; the other bases are centered.
std::vector<std::vector<std::size_t>> sample_orders() {
  return {{0, 1, 2, 3}, {1, 0, 2, 3}, {2, 0, 1, 3}, {3, 1, 2, 0}};
}

// Two copies of atom {p} plus one {} state.
BasicModel duplicated_model() {
  return BasicModel::from_valuation(kP, {"a", "b", "c"}, {{"p", {"a", "b"}}});
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("basic models") {
    const auto one = canonical_model(kP);
    CHECK(one.size() == 2);
    CHECK(one.extension(truth_set(f("p", kP), kP)) == std::vector<std::size_t>{1});
    CHECK(one.state_name(1) == "{p}");
    CHECK(canonical_model(kPQ).size() == 4);

    const auto dup = duplicated_model();
    CHECK(dup.equivalent_states(0, 1));
    CHECK_FALSE(dup.equivalent_states(0, 2));
    CHECK(dup.index_of("c") == 2u);

    CHECK(kind_of([] { BasicModel::from_valuation(kP, {"a", "a"}, {{"p", {}}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { BasicModel::from_valuation(kP, {"a"}, {{"q", {}}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { BasicModel::from_valuation(kP, {"a"}, {{"p", {"z"}}}); }) == ErrorKind::InvalidModel);
  }

  TEST_CASE("well-order families") {
    CHECK(kind_of([] { WellOrderFamily({{0, 0}, {0, 1}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { WellOrderFamily({{0, 1}}); }) == ErrorKind::InvalidModel);
    const WellOrderFamily fam(sample_orders());
    CHECK(fam.centered());
    CHECK(fam.rank(3, 0) == 3u);
    CHECK_FALSE(WellOrderFamily({{1, 0}, {1, 0}}).centered());
  }

  TEST_CASE("induced selection") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    const auto sm = induce_selection(model, WellOrderFamily(sample_orders()), menu);
    const auto not_p = Menu(kPQ, {f("!p"), Formula::top()});
    const auto sm2 = induce_selection(model, WellOrderFamily(sample_orders()), not_p);
    CHECK(sm2.select(3, 0) == 2u);
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(sm.select(s, menu.true_index()) == s);
      for (std::uint32_t x = 0; x < 4; ++x) CHECK(sm.select(s, menu.atom_member(Atom{x})) == x);
    }
    CHECK_FALSE(check_centering(sm));
  }

  TEST_CASE("F-richness and success") {
    const auto dup = duplicated_model();
    const Menu menu(kP, {f("!p", kP), Formula::top()});
    const Menu rich(kP, {f("p", kP), f("!p", kP), Formula::top()});
    // in a model with no {} state, !p has no extension
    const auto only_p = BasicModel::from_valuation(kP, {"a"}, {{"p", {"a"}}});
    CHECK(kind_of([&] { require_f_rich(only_p, rich); }) == ErrorKind::FRichnessViolation);
    CHECK_NOTHROW(require_f_rich(dup, menu));
    // selecting a !p-state for p breaks success
    CHECK(kind_of([&] { SelectionModel(dup, rich, {{2, 2, 0}, {0, 2, 1}, {0, 2, 2}}); }) ==
          ErrorKind::PreconditionViolation);
    const SelectionModel hand(dup, rich, {{0, 2, 0}, {1, 2, 1}, {0, 2, 2}});
    CHECK_FALSE(check_centering(hand));
    CHECK_FALSE(hand.family());
  }

  TEST_CASE("centering witness") {
    const auto model = canonical_model(kP);
    const Menu menu(kP, {f("p", kP), f("!p", kP), Formula::top()});
    // order at {} puts {p} first
    const auto sm = induce_selection(model, WellOrderFamily({{1, 0}, {1, 0}}), menu);
    const auto w = check_centering(sm);
    REQUIRE(w);
    CHECK(w->state == 0u);
    CHECK(w->member == menu.index_of(Formula::top()));
    CHECK(kind_of([&] { check_lemma1(sm, f("p", kP), f("p", kP)); }) == ErrorKind::PreconditionViolation);
  }

  TEST_CASE("language-based families") {
    const auto canon = canonical_model(kPQ);
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
      CHECK_FALSE(check_language_based(WellOrderFamily(gen::orders(canon, rng, i % 2)), canon));
      CHECK_FALSE(check_language_based(random_language_based_family(canon, rng, i % 2), canon));
    }
    const auto dup = duplicated_model();
    const auto interleaved = check_language_based(WellOrderFamily({{0, 2, 1}, {1, 0, 2}, {2, 0, 1}}), dup);
    REQUIRE(interleaved);
    const auto* w = std::get_if<InterleavingWitness>(&*interleaved);
    REQUIRE(w);
    CHECK(*w == InterleavingWitness{0, 0, 2, 1});
    // quotient orders of the two {p} copies disagree
    const auto mismatch = check_language_based(WellOrderFamily({{0, 1, 2}, {2, 1, 0}, {2, 0, 1}}), dup);
    REQUIRE(mismatch);
    CHECK(std::get<QuotientMismatchWitness>(*mismatch) == QuotientMismatchWitness{0, 1});
    CHECK_FALSE(check_language_based(WellOrderFamily({{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}), dup));
    for (int i = 0; i < 20; ++i) {
      CHECK_FALSE(check_language_based(random_language_based_family(dup, rng, true), dup));
      CHECK_FALSE(check_language_based(WellOrderFamily(gen::orders(dup, rng, false)), dup));
    }
  }

  TEST_CASE("selection agrees with the ranking oracle") {
    const auto model = duplicated_model();
    const Menu menu(kP, {f("p", kP), f("!p", kP), f("p | !p", kP), Formula::top()});
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
      const auto orders = gen::orders(model, rng, i % 2);
      const auto sm = induce_selection(model, WellOrderFamily(orders), menu);
      const auto world = oracle::world_of(model, orders);
      for (std::size_t s = 0; s < model.size(); ++s) {
        for (std::size_t m = 0; m < menu.size(); ++m) REQUIRE(sm.select(s, m) == oracle::closest(world, s, menu.at(m)));
      }
      CHECK(check_centering(sm).has_value() == !WellOrderFamily(orders).centered());
    }
  }

  TEST_CASE("guarded entailed effects leave states fixed") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    std::vector<Formula> fs = menu.formulas();
    fs.push_back(f("p"));
    const Menu wide(kPQ, fs);
    const auto sm = induce_selection(model, WellOrderFamily(sample_orders()), wide);
    CHECK_FALSE(check_lemma1(sm, f("p"), f("p")));
    CHECK_FALSE(check_lemma1(sm, f("p & q"), f("p")));
    CHECK(kind_of([&] { check_lemma1(sm, f("p"), f("p & q")); }) == ErrorKind::PreconditionViolation);
  }

  TEST_CASE("SSC decomposition: worked case") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    const auto sm = induce_selection(model, WellOrderFamily(sample_orders()), menu);
    const std::vector<Formula> parts = {atom_formula(kPQ, Atom{1}), atom_formula(kPQ, Atom{2}),
                                        atom_formula(kPQ, Atom{3})};
    CHECK(check_lemma2(sm, f("p | q"), parts, Atom{3}) == 2u);
    CHECK(kind_of([&] { check_lemma2(sm, f("p | q"), {parts[0]}, Atom{1}); }) == ErrorKind::PreconditionViolation);
  }

  TEST_CASE("SSC decomposition: trivial case") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    Rng rng(33);
    const auto sm = induce_selection(model, random_language_based_family(model, rng, false), menu);
    for (std::size_t m = 0; m < menu.size(); ++m) {
      for (std::uint32_t x = 0; x < 4; ++x) CHECK(check_lemma2(sm, menu.at(m), {menu.at(m)}, Atom{x}) == 0u);
    }
  }

  TEST_CASE("SSC decomposition sweep") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    Rng rng(34);
    std::size_t checked = 0;
    for (int k = 0; k < 20; ++k) {
      const auto sm = induce_selection(model, random_language_based_family(model, rng, k % 2), menu);
      for (std::size_t whole = 0; whole < menu.size(); ++whole) {
        const auto& wt = menu.truth(whole);
        std::vector<std::size_t> inside;
        for (std::size_t m = 0; m < menu.size(); ++m) {
          if (menu.truth(m).subset_of(wt)) inside.push_back(m);
        }
        // every set of at most three members covering the whole
        for (std::uint32_t subset = 1; subset < (1u << inside.size()); ++subset) {
          if (std::popcount(subset) > 3) continue;
          TruthSet cover(4);
          std::vector<Formula> parts;
          for (std::size_t i = 0; i < inside.size(); ++i) {
            if (!((subset >> i) & 1u)) continue;
            cover = cover | menu.truth(inside[i]);
            parts.push_back(menu.at(inside[i]));
          }
          if (!(cover == wt)) continue;
          for (std::uint32_t x = 0; x < 4; ++x) {
            REQUIRE(check_lemma2(sm, menu.at(whole), parts, Atom{x}).has_value());
            ++checked;
          }
        }
      }
    }
    CHECK(checked > 1000);
  }
}
