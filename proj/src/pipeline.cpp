#include "dorep/pipeline.hpp"

#include <numeric>

#include "dorep/error.hpp"

namespace dorep {

Fixture generate_fixture(const Signature& sig, std::uint64_t seed, std::uint64_t cap) {
  auto menu = rich_menu(sig);
  const ActSpace space(menu, cap);
  auto model = canonical_model(sig);
  const std::size_t n = model.size();
  std::vector<std::int64_t> pool(17);
  std::iota(pool.begin(), pool.end(), std::int64_t{-8});
  if (n > pool.size()) {
    throw Error(ErrorKind::PreconditionViolation,
                "cannot draw " + std::to_string(n) + " distinct utilities from [-8, 8]");
  }
  Rng rng(seed);
  auto family = random_language_based_family(model, rng, true);
  auto sm = induce_selection(model, family, menu);
  rng.shuffle(pool);
  std::vector<Rational> utility;
  for (std::size_t s = 0; s < n; ++s) utility.emplace_back(static_cast<long>(pool[s]));
  std::vector<Rational> probability(n, Rational(1, static_cast<unsigned long>(n)));
  return Fixture{seed, std::move(family),
                 SEURepresentation(std::move(sm), std::move(probability), std::move(utility))};
}

namespace {

io::Json atom_member_json(const Menu& menu, Atom w, std::size_t member) {
  io::Json j;
  j["w"] = atom_label(menu.signature(), w);
  j["member"] = menu.at(member).to_string();
  return j;
}

}  // namespace

SynthesisOutcome synthesize(const PreferenceRelation& pr, const SynthesisOptions& options) {
  const auto& menu = pr.menu();
  SynthesisOutcome out;
  auto fail = [&](std::string stage, std::string message, io::Json failure) {
    out.failed_stage = std::move(stage);
    out.message = std::move(message);
    out.failure = std::move(failure);
    return out;
  };

  out.reports.push_back(check_cent(pr));
  out.reports.push_back(check_ssc(pr));
  out.reports.push_back(check_trans(pr));
  for (const auto& r : out.reports) {
    if (!r.passed) return fail(to_string(r.axiom), "axiom check failed", io::report_to_json(r, menu));
  }

  auto solved = solve_state_dependent(pr, options.lp);
  if (auto* bad = std::get_if<LpInfeasibility>(&solved)) {
    auto cert = io::certificate_to_json(*bad, menu);
    cert["verified"] = certifies_infeasibility(menu.size() * menu.signature().atom_count(),
                                               bad->constraints, bad->certificate);
    return fail("lp", "no additive state-dependent utility exists", std::move(cert));
  }
  auto u_star = std::get<StateDependentUtility>(std::move(solved));

  AtomOrders orders;
  try {
    orders = extract_well_orders(pr, true);
  } catch (const Error& e) {
    return fail("orders", e.what(), io::Json::object());
  }
  if (auto w = check_lemma4(pr, orders)) {
    return fail("lemma4", "do(phi) is not indifferent to its closest atom", atom_member_json(menu, w->w, w->member));
  }
  if (auto w = check_lemma5(u_star, orders, menu)) {
    auto j = atom_member_json(menu, w->w, w->member);
    j["other"] = menu.at(w->other).to_string();
    return fail("lemma5", "utility is not well defined", std::move(j));
  }
  out.built = build_representation(menu, std::move(orders), std::move(u_star));
  if (auto w = check_eq2(*out.built)) {
    io::Json j;
    j["state"] = out.built->rep.selection().model().state_name(w->state);
    j["member"] = menu.at(w->member).to_string();
    return fail("eq2", "selection differs from the closest-atom construction", std::move(j));
  }
  out.verification = verify_representation(out.built->rep, pr, options.verify);
  if (!out.verification->passed) {
    return fail("verify", "preference and expected utility disagree", io::verify_to_json(*out.verification, menu));
  }
  return out;
}

io::Json synthesis_to_json(const SynthesisOutcome& outcome, const PreferenceRelation& pr,
                           const SynthesisOptions& options) {
  const auto& menu = pr.menu();
  io::Json j;
  if (outcome.passed() && outcome.built) {
    j = io::representation_to_json(*outcome.built);
  } else {
    j["stage"] = *outcome.failed_stage;
    j["message"] = outcome.message.value_or("");
    j["failure"] = outcome.failure;
  }
  if (outcome.verification) j["verification"] = io::verify_to_json(*outcome.verification, menu);
  io::Json provenance;
  provenance["seeds"] = io::Json{{"verify", options.verify.seed}};
  provenance["menu"] = io::menu_to_json(menu)["menu"];
  io::Json reports = io::Json::array();
  for (const auto& r : outcome.reports) reports.push_back(io::report_to_json(r, menu));
  provenance["axiom_reports"] = std::move(reports);
  j["provenance"] = std::move(provenance);
  return j;
}

RoundtripEntry roundtrip_seed(const Signature& sig, std::uint64_t seed, const SynthesisOptions& options) {
  const auto fixture = generate_fixture(sig, seed);
  const auto& menu = fixture.rep.selection().menu();
  const auto pr = generate_preferences(fixture.rep, menu);
  const auto outcome = synthesize(pr, options);
  RoundtripEntry e{seed, outcome.passed(), outcome.failed_stage, 0, 0, 0};
  e.classes = pr.base_classes(ActSpace(menu)).size();
  if (outcome.verification) {
    e.verified_pairs = outcome.verification->coverage.count;
    e.disagreements = outcome.verification->passed ? 0 : 1;
  }
  return e;
}

io::Json roundtrip_to_json(const Signature& sig, const std::vector<RoundtripEntry>& entries) {
  io::Json j;
  j["props"] = sig.props();
  std::size_t passed = 0;
  io::Json results = io::Json::array();
  for (const auto& e : entries) {
    if (e.passed) ++passed;
    io::Json r;
    r["seed"] = e.seed;
    r["verdict"] = e.passed ? "pass" : "fail";
    if (e.failed_stage) r["stage"] = *e.failed_stage;
    r["preference_classes"] = e.classes;
    r["verified_pairs"] = e.verified_pairs;
    r["disagreements"] = e.disagreements;
    results.push_back(std::move(r));
  }
  j["total"] = entries.size();
  j["passed"] = passed;
  j["results"] = std::move(results);
  return j;
}

}  // namespace dorep
