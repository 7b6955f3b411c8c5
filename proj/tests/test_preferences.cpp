#include <doctest.h>

#include "dorep/error.hpp"
#include "dorep/preferences.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dorep;

namespace {

const Signature kP({"p"});
const Signature kPQ({"p", "q"});

Formula f(std::string_view text, const Signature& sig = kPQ) { return parse_formula(text, sig); }
Action act(std::string_view text, const Signature& sig = kPQ) { return parse_action(text, sig); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

SEURepresentation one_prop_rep() {
  const auto model = canonical_model(kP);
  auto sm = induce_selection(model, WellOrderFamily({{0, 1}, {1, 0}}), rich_menu(kP));
  return SEURepresentation(std::move(sm), {Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1)});
}

struct Generated {
  std::vector<std::vector<std::size_t>> orders;
  std::vector<Rational> pi;
  std::vector<Rational> u;
  SEURepresentation rep;
};

Generated generated(const Signature& sig, std::uint64_t seed, bool centered = true) {
  Rng rng(seed);
  const auto model = canonical_model(sig);
  auto orders = gen::orders(model, rng, centered);
  const auto n = model.size();
  auto u = gen::distinct_utilities(n, rng);
  std::vector<Rational> pi(n, Rational(1, static_cast<unsigned long>(n)));
  auto sm = induce_selection(model, WellOrderFamily(orders), rich_menu(sig));
  return {orders, pi, u, SEURepresentation(std::move(sm), pi, u)};
}

}  // namespace

TEST_SUITE("preferences") {
  TEST_CASE("expected utility on the one-proposition example") {
    const auto rep = one_prop_rep();
    CHECK(rep.expected_utility(act("do(p)", kP)) == 1);
    CHECK(rep.expected_utility(act("do(true)", kP)) == Rational(1, 2));
    CHECK(rep.expected_utility(act("do(!p)", kP)) == 0);
    CHECK(rep.expected_utility(act("do(p); do(!p)", kP)) == 0);
  }

  TEST_CASE("representation validation") {
    const auto model = canonical_model(kP);
    auto sm = induce_selection(model, WellOrderFamily({{0, 1}, {1, 0}}), rich_menu(kP));
    CHECK(kind_of([&] { SEURepresentation(sm, {Rational(1, 2), Rational(1, 3)}, {0, 1}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([&] { SEURepresentation(sm, {Rational(3, 2), Rational(-1, 2)}, {0, 1}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([&] { SEURepresentation(sm, {Rational(1)}, {0, 1}); }) == ErrorKind::InvalidModel);
  }

  TEST_CASE("expected utility agrees with the oracle") {
    Rng rng(41);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = generated(kPQ, seed, seed % 2);
      const auto world = oracle::world_of(g.rep.selection().model(), g.orders);
      const auto& menu = g.rep.selection().menu();
      for (int i = 0; i < 200; ++i) {
        const auto a = gen::action(menu, rng, 4, true);
        REQUIRE(g.rep.expected_utility(a) == oracle::expected_utility(a, world, g.pi, g.u));
        if (!a.contains_seq()) REQUIRE(g.rep.expected_utility(compile(a, menu)) == g.rep.expected_utility(a));
      }
    }
  }

  TEST_CASE("point mass and constant utility") {
    const auto model = canonical_model(kPQ);
    const auto menu = rich_menu(kPQ);
    Rng rng(42);
    const auto orders = gen::orders(model, rng, true);
    auto sm = induce_selection(model, WellOrderFamily(orders), menu);
    const SEURepresentation flat(sm, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}, {3, 3, 3, 3});
    const auto flat_pr = generate_preferences(flat, menu);
    const SEURepresentation point(sm, {0, 0, 1, 0}, {5, -1, 2, 7});
    const auto point_pr = generate_preferences(point, menu);
    const auto world = oracle::world_of(model, orders);
    for (int i = 0; i < 200; ++i) {
      const auto a = gen::action(menu, rng, 3);
      const auto b = gen::action(menu, rng, 3);
      CHECK(flat_pr.compare(a, b) == 0);
      const std::vector<Rational> u = {5, -1, 2, 7};
      const auto ua = u[oracle::interpret_at(a, 2, world)];
      const auto ub = u[oracle::interpret_at(b, 2, world)];
      CHECK((point_pr.compare(a, b) < 0) == (ua < ub));
      CHECK((point_pr.compare(a, b) == 0) == (ua == ub));
    }
  }

  TEST_CASE("equal tables are indifferent and compare is reflexive") {
    const auto g = generated(kPQ, 3);
    const auto& menu = g.rep.selection().menu();
    const auto pr = generate_preferences(g.rep, menu);
    Rng rng(43);
    for (int i = 0; i < 200; ++i) {
      const auto t = random_act(menu, rng);
      CHECK(pr.compare(canonical_act(t, menu), alternative_act(t, menu)) == 0);
      CHECK(pr.compare(t, t) == 0);
    }
  }

  TEST_CASE("partition relations") {
    const auto menu = rich_menu(kP);
    const ActSpace space(menu);
    std::vector<std::vector<CompiledAct>> classes(2);
    for (const auto& t : space) classes[t.choice[0] == 0 ? 0 : 1].push_back(t);
    const auto pr = PreferenceRelation::from_partition(menu, classes);
    CHECK(pr.compare(act("do(!p)", kP), act("do(p)", kP)) > 0);
    CHECK(pr.compare(act("do(p)", kP), act("do(true)", kP)) == 0);
    CHECK(pr.base_classes(space).size() == 2);

    auto missing = classes;
    missing[1].pop_back();
    CHECK(kind_of([&] { PreferenceRelation::from_partition(menu, missing); }) == ErrorKind::InvalidPreference);
    auto doubled = classes;
    doubled[1].push_back(doubled[0][0]);
    CHECK(kind_of([&] { PreferenceRelation::from_partition(menu, doubled); }) == ErrorKind::InvalidPreference);
    auto empty = classes;
    empty.emplace_back();
    CHECK(kind_of([&] { PreferenceRelation::from_partition(menu, empty); }) == ErrorKind::InvalidPreference);
  }

  TEST_CASE("strict overrides") {
    const auto menu = rich_menu(kP);
    const ActSpace space(menu);
    const auto pr = PreferenceRelation::from_partition(menu, {std::vector<CompiledAct>(space.begin(), space.end())});
    const auto a = compile(act("if p then do(!p) else do(p)", kP), menu);
    const auto b = compile(act("if p then do(p) else do(!p)", kP), menu);
    const auto c = compile(act("do(p)", kP), menu);
    const auto cyc = pr.with_strict(a, b).with_strict(b, c).with_strict(c, a);
    CHECK(cyc.compare(a, b) > 0);
    CHECK(cyc.compare(b, a) < 0);
    CHECK(cyc.compare(b, c) > 0);
    CHECK(cyc.compare(c, a) > 0);
    CHECK(cyc.compare_base(c, a) == 0);
    CHECK(cyc.has_overrides());
    CHECK(cyc.strict_overrides().size() == 3);
    CHECK(kind_of([&] { pr.with_strict(a, a); }) == ErrorKind::InvalidPreference);
  }

  TEST_CASE("conditional preference") {
    const auto g = generated(kPQ, 5);
    const auto& menu = g.rep.selection().menu();
    const auto pr = generate_preferences(g.rep, menu);
    Rng rng(44);
    for (int i = 0; i < 200; ++i) {
      const auto a = gen::action(menu, rng, 3);
      const auto b = gen::action(menu, rng, 3);
      CHECK(conditional_compare(pr, Formula::top(), a, b) == pr.compare(a, b));
      CHECK(conditional_compare(pr, f("p & !p"), a, b) == 0);
      // conditioning on an atom only looks at that atom's entries
      const auto x = static_cast<std::uint32_t>(rng.below(4));
      const auto ta = compile(a, menu);
      const auto tb = compile(b, menu);
      const auto verdict = conditional_compare(pr, atom_formula(kPQ, Atom{x}), a, b);
      if (ta.choice[x] == tb.choice[x]) CHECK(verdict == 0);
      auto a2 = constant_act(menu, menu.true_index());
      auto b2 = a2;
      a2.choice[x] = ta.choice[x];
      b2.choice[x] = tb.choice[x];
      CHECK(verdict == pr.compare(a2, b2));
    }
  }

  TEST_CASE("closeness mirrors the generating order") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = generated(kPQ, seed);
      const auto& menu = g.rep.selection().menu();
      const auto pr = generate_preferences(g.rep, menu);
      const auto& fam = *g.rep.selection().family();
      for (std::uint32_t w = 0; w < 4; ++w) {
        CHECK(closeness(pr, Atom{w}, Atom{w}, Atom{w}));
        for (std::uint32_t x = 0; x < 4; ++x) {
          CHECK(closeness(pr, Atom{w}, Atom{w}, Atom{x}));
          for (std::uint32_t y = 0; y < 4; ++y) {
            if (x == y) continue;
            // distinct utilities make every strict rank difference visible
            CHECK(closeness(pr, Atom{w}, Atom{x}, Atom{y}) == (fam.rank(w, x) < fam.rank(w, y)));
          }
        }
      }
    }
  }

  TEST_CASE("closeness requires a rich menu") {
    const Menu poor(kPQ, {f("p"), Formula::top()});
    const auto pr = PreferenceRelation::from_scores(poor, [](const CompiledAct&) { return Rational(0); });
    CHECK(kind_of([&] { closeness(pr, Atom{0}, Atom{1}, Atom{2}); }) == ErrorKind::RichnessViolation);
  }

  TEST_CASE("scored relations without a cache") {
    const auto g = generated(kPQ, 7);
    const auto& menu = g.rep.selection().menu();
    const auto cached = generate_preferences(g.rep, menu);
    const auto lazy = generate_preferences(g.rep, menu, 10);
    Rng rng(45);
    for (int i = 0; i < 300; ++i) {
      const auto a = random_act(menu, rng);
      const auto b = random_act(menu, rng);
      REQUIRE(cached.compare(a, b) == lazy.compare(a, b));
    }
  }
}
