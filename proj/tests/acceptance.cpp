// Acceptance run: one pass/fail line per criterion, nonzero exit if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "dorep/axioms.hpp"
#include "dorep/pipeline.hpp"
#include "dorep/representation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dorep;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("threw: ") + e.what()};
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (out.ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << out.detail << " ("
       << seconds_since(start) << " s)";
  std::cout << line.str() << std::endl;
  return out.ok;
}

Outcome round_trip_two_props() {
  const Signature sig({"p", "q"});
  const auto start = Clock::now();
  std::uint64_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto fixture = generate_fixture(sig, seed);
    const auto& menu = fixture.rep.selection().menu();
    if (menu.size() != 11) return {false, "rich menu has " + std::to_string(menu.size()) + " members"};
    const auto pr = generate_preferences(fixture.rep, menu);
    SynthesisOptions options;
    options.verify.pairs = 10'000;
    options.verify.seed = seed;
    const auto outcome = synthesize(pr, options);
    if (!outcome.passed()) return {false, "seed " + std::to_string(seed) + " failed at " + *outcome.failed_stage};
    for (const auto& r : outcome.reports) {
      if (r.coverage.kind != Coverage::Kind::Exhaustive) return {false, "axiom check was not exhaustive"};
    }
    const auto& v = *outcome.verification;
    if (v.coverage.count != 10'000) return {false, "seed " + std::to_string(seed) + " checked too few pairs"};
    pairs += v.coverage.count;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 600) return {false, "took " + std::to_string(elapsed) + " s"};
  return {true, "100 seeds, cent/ssc/trans exhaustive, " + std::to_string(pairs) + " sampled pairs, 0 disagreements"};
}

Outcome exhaustive_one_prop() {
  const Signature sig({"p"});
  const auto start = Clock::now();
  std::uint64_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fixture = generate_fixture(sig, seed);
    const auto& menu = fixture.rep.selection().menu();
    const auto pr = generate_preferences(fixture.rep, menu);
    if (ActSpace(menu).size() != 9) return {false, "act space is not 9"};
    const auto built = build_representation(pr);
    if (check_lemma4(pr, built.orders)) return {false, "closest-atom witness at seed " + std::to_string(seed)};
    if (check_lemma5(built.u_star, built.orders, menu)) return {false, "ill-defined utility at seed " + std::to_string(seed)};
    const auto v = verify_representation(built.rep, pr);
    if (!v.passed || v.coverage.kind != Coverage::Kind::Exhaustive || v.coverage.count != 36) {
      return {false, "seed " + std::to_string(seed) + " verified " + std::to_string(v.coverage.count) + " pairs"};
    }
    pairs += v.coverage.count;
  }
  const double per_seed = seconds_since(start) / 10;
  if (per_seed >= 1) return {false, "a single run took " + std::to_string(per_seed) + " s"};
  return {true, "10 seeds x 36 pairs (" + std::to_string(pairs) + "), closest-atom and utility checks exhaustive, 0 disagreements"};
}

Outcome selection_identity() {
  std::uint64_t triples = 0;
  for (const auto& sig : {Signature({"p"}), Signature({"p", "q"})}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto fixture = generate_fixture(sig, seed);
      const auto& menu = fixture.rep.selection().menu();
      const auto built = build_representation(generate_preferences(fixture.rep, menu));
      if (check_eq2(built)) return {false, "check_eq2 witness"};
      const auto n = sig.atom_count();
      const auto& sm = built.rep.selection();
      for (std::uint32_t w = 0; w < n; ++w) {
        for (std::uint32_t w2 = 0; w2 < n; ++w2) {
          for (std::size_t m = 0; m < menu.size(); ++m) {
            const auto want = paired_state(n, min_choice(built.orders, Atom{w}, menu.truth(m)), Atom{w});
            if (sm.select(paired_state(n, Atom{w}, Atom{w2}), m) != want) return {false, "selection mismatch"};
            ++triples;
          }
        }
      }
    }
  }
  return {true, std::to_string(triples) + " (W, W', phi) triples over 20 representations"};
}

Outcome lemma1_suite() {
  const Signature sig({"p", "q"});
  const auto model = canonical_model(sig);
  std::uint64_t class_pairs = 0, checks = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto orders = gen::orders(model, rng, true);
    const WellOrderFamily family(orders);
    const auto world = oracle::world_of(model, orders);
    class_pairs = 0;
    for (std::uint32_t phi = 1; phi < 16; ++phi) {
      const auto effect = gen::class_formula(sig, phi);
      const auto sm = induce_selection(model, family, Menu(sig, {effect, Formula::top()}));
      for (std::uint32_t psi = 0; psi < 16; ++psi) {
        if ((psi & ~phi) != 0) continue;
        const auto condition = gen::class_formula(sig, psi);
        ++class_pairs;
        if (auto s = check_lemma1(sm, condition, effect)) {
          return {false, condition.to_string() + " / " + effect.to_string() + " moves state " + std::to_string(*s)};
        }
        const auto image = oracle::interpret(Action::guarded(condition, Action::make_do(effect)), world);
        for (std::size_t s = 0; s < image.size(); ++s) {
          if (image[s] != s) return {false, "oracle disagrees with the identity"};
        }
        ++checks;
      }
    }
  }
  return {true, std::to_string(class_pairs) + " entailing class pairs x 20 models, " + std::to_string(checks) +
                    " identity maps, 0 exceptions"};
}

Outcome negative_controls() {
  std::string detail;
  {
    const auto pr = fixtures::non_centered_preferences();
    const auto r = check_cent(pr);
    if (r.passed || !r.witness || !revalidates(pr, *r.witness)) return {false, "(a) no self-validating cent witness"};
    const auto& w = std::get<CentWitness>(*r.witness);
    const auto rep = fixtures::non_centered_rep();
    const auto world = oracle::world_of(rep.selection().model(), rep.selection().family()->orders());
    const auto& menu = pr.menu();
    const auto lhs = oracle::expected_utility(Action::guarded(menu.at(w.condition), Action::make_do(menu.at(w.effect))),
                                              world, rep.probability(), rep.utility());
    const auto rhs = oracle::expected_utility(Action::make_do(Formula::top()), world, rep.probability(), rep.utility());
    if (lhs == rhs) return {false, "(a) oracle finds no expected-utility gap"};
    detail += "(a) cent witness (" + menu.at(w.condition).to_string() + ", " + menu.at(w.effect).to_string() + ")";
  }
  {
    const auto pr = fixtures::trans_violation();
    const auto r = check_trans(pr);
    if (r.passed || !r.witness || !revalidates(pr, *r.witness)) return {false, "(b) no trans witness"};
    const auto& w = std::get<TransWitness>(*r.witness);
    if (!closeness(pr, w.w, w.x, w.y) || !closeness(pr, w.w, w.y, w.z) || closeness(pr, w.w, w.x, w.z)) {
      return {false, "(b) witness does not break transitivity"};
    }
    detail += "; (b) trans witness at W=" + atom_label(pr.menu().signature(), w.w);
  }
  {
    const auto pr = fixtures::cyclic_preferences();
    const auto solved = solve_state_dependent(pr);
    const auto* bad = std::get_if<LpInfeasibility>(&solved);
    if (!bad) return {false, "(c) LP was feasible"};
    const auto vars = pr.menu().size() * pr.menu().signature().atom_count();
    if (!certifies_infeasibility(vars, bad->constraints, bad->certificate) ||
        !oracle::farkas_holds(vars, bad->constraints, bad->certificate.multipliers)) {
      return {false, "(c) certificate does not verify"};
    }
    detail += "; (c) " + std::to_string(bad->constraints.size()) + "-row Farkas certificate verified";
  }
  return {true, detail};
}

Outcome cancellation_sampling() {
  const Signature sig({"p", "q"});
  std::uint64_t tuples = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto fixture = generate_fixture(sig, seed);
    const auto& menu = fixture.rep.selection().menu();
    const auto pr = generate_preferences(fixture.rep, menu);
    const auto r = check_canc(pr, {3, 100'000, seed, 200});
    if (!r.passed) return {false, "violation at seed " + std::to_string(seed)};
    tuples += r.coverage.count;
    Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
      const auto t = random_act(menu, rng);
      if (pr.compare(canonical_act(t, menu), alternative_act(t, menu)) != 0) return {false, "equal tables differ"};
    }
  }
  return {true, "20 seeds, max_n 3, budget 1e5 each (" + std::to_string(tuples) +
                    " instances), 200 equal-table acts per seed, 0 violations"};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "dorep_acceptance";
  std::filesystem::create_directories(dir);
  auto once = [&](const std::string& name) {
    const auto path = (dir / name).string();
    const char* argv[] = {"dorep", "roundtrip", "--props", "p,q", "--seeds", "42", "--out", path.c_str()};
    std::ostringstream out, err;
    const int code = cli::run(8, argv, out, err);
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return std::tuple{code, bytes, out.str()};
  };
  const auto [c1, b1, o1] = once("first.json");
  const auto [c2, b2, o2] = once("second.json");
  if (c1 != 0 || c2 != 0) return {false, "roundtrip exited nonzero"};
  if (b1.empty() || b1 != b2 || o1 != o2) return {false, "outputs differ"};
  return {true, "two runs, " + std::to_string(b1.size()) + " identical bytes"};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "round trip, 100 seeds over two propositions", round_trip_two_props);
  all &= report(2, "one proposition, all pairs", exhaustive_one_prop);
  all &= report(3, "paired-state selection identity", selection_identity);
  all &= report(4, "guarded entailed effects are the identity", lemma1_suite);
  all &= report(5, "negative controls", negative_controls);
  all &= report(6, "cancellation sampling", cancellation_sampling);
  all &= report(7, "roundtrip determinism", determinism);
  std::cout << (all ? "all acceptance criteria passed" : "acceptance criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
