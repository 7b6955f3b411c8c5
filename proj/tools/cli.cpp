#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dorep/axioms.hpp"
#include "dorep/error.hpp"
#include "dorep/io.hpp"
#include "dorep/pipeline.hpp"
#include "dorep/representation.hpp"

namespace dorep::cli {

namespace {

using io::Json;

constexpr int kPass = 0;
constexpr int kUnexpected = 1;
constexpr int kFail = 2;
constexpr int kBadInput = 3;

Signature props_from(const std::string& list) {
  std::vector<std::string> props;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) props.push_back(item);
  return Signature(std::move(props));
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, "malformed seed '" + std::string(s) + "'");
  }
  return v;
}

// "7", "1..100", or "1,4,9".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  if (auto dots = spec.find(".."); dots != std::string::npos) {
    const auto lo = parse_u64(std::string_view(spec).substr(0, dots));
    const auto hi = parse_u64(std::string_view(spec).substr(dots + 2));
    if (hi < lo) throw Error(ErrorKind::Parse, "empty seed range '" + spec + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) seeds.push_back(parse_u64(item));
  if (seeds.empty()) throw Error(ErrorKind::Parse, "no seeds given");
  return seeds;
}

struct CheckConfig {
  std::string prefs;
  std::string menu;
  std::size_t canc_n = 3;
  std::uint64_t budget = 10'000;
  std::uint64_t seed = 0;
  std::string witness;
};

int check_axioms(const CheckConfig& cfg, std::ostream& out) {
  const auto menu = io::menu_from(io::read_json(cfg.menu));
  const auto pr = io::preferences_from(io::read_json(cfg.prefs), menu);

  if (!cfg.witness.empty()) {
    auto j = io::read_json(cfg.witness);
    if (j.contains("witness")) j = j.at("witness");
    const auto w = io::witness_from(j, menu);
    const bool genuine = revalidates(pr, w);
    Json report;
    report["command"] = "check-axioms";
    report["witness"] = io::witness_to_json(w, menu);
    report["revalidates"] = genuine;
    out << report.dump(2) << '\n';
    return genuine ? kFail : kPass;
  }

  std::vector<AxiomReport> reports = derive_consequences(pr, {40, 2'000, cfg.seed});
  reports.push_back(check_cent(pr));
  reports.push_back(check_ssc(pr));
  reports.push_back(check_trans(pr));
  reports.push_back(check_canc(pr, {cfg.canc_n, cfg.budget, cfg.seed, 200}));

  bool all = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    all = all && r.passed;
    list.push_back(io::report_to_json(r, menu));
  }
  Json report;
  report["command"] = "check-axioms";
  report["seed"] = cfg.seed;
  report["verdict"] = all ? "pass" : "fail";
  report["reports"] = std::move(list);
  out << report.dump(2) << '\n';
  return all ? kPass : kFail;
}

struct SynthesizeConfig {
  std::string prefs;
  std::string menu;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t pairs = 10'000;
};

int synthesize_cmd(const SynthesizeConfig& cfg, std::ostream& out) {
  const auto menu = io::menu_from(io::read_json(cfg.menu));
  const auto pr = io::preferences_from(io::read_json(cfg.prefs), menu);
  SynthesisOptions options;
  options.verify.seed = cfg.seed;
  options.verify.pairs = cfg.pairs;
  const auto outcome = synthesize(pr, options);
  const auto doc = synthesis_to_json(outcome, pr, options);
  io::write_json(cfg.out, doc);
  Json summary;
  summary["command"] = "synthesize";
  summary["verdict"] = outcome.passed() ? "pass" : "fail";
  if (outcome.passed()) {
    summary["states"] = outcome.built->rep.selection().model().size();
    summary["verification"] = io::verify_to_json(*outcome.verification, menu);
  } else {
    summary["stage"] = *outcome.failed_stage;
    summary["message"] = outcome.message.value_or("");
    summary["failure"] = outcome.failure;
  }
  summary["output"] = cfg.out;
  out << summary.dump(2) << '\n';
  return outcome.passed() ? kPass : kFail;
}

int evaluate_cmd(const std::string& model_path, const std::string& act_text, std::ostream& out) {
  const auto file = io::model_from(io::read_json(model_path));
  const auto& sm = file.sm;
  const auto& model = sm.model();
  const auto act = parse_action(act_text, model.signature());
  const auto image = interpret(act, sm);
  std::size_t width = 0;
  for (const auto& name : model.state_names()) width = std::max(width, name.size());
  out << "action: " << act.to_string() << '\n';
  for (std::size_t s = 0; s < model.size(); ++s) {
    const auto& name = model.state_name(s);
    out << "  " << name << std::string(width - name.size(), ' ') << " -> " << model.state_name(image[s]) << '\n';
  }
  if (file.probability && file.utility) {
    const SEURepresentation rep(sm, *file.probability, *file.utility);
    out << "expected utility: " << to_string(rep.expected_utility(act)) << '\n';
  }
  return kPass;
}

int generate_cmd(const std::string& props, std::uint64_t seed, const std::string& dir, std::ostream& out) {
  const auto sig = props_from(props);
  const auto fixture = generate_fixture(sig, seed);
  const auto& rep = fixture.rep;
  const auto& menu = rep.selection().menu();
  const auto pr = generate_preferences(rep, menu);
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  auto model = io::model_to_json(rep.selection(), &rep.probability(), &rep.utility());
  model["seed"] = seed;
  io::write_json(base / "model.json", model);
  io::write_json(base / "menu.json", io::menu_to_json(menu));
  auto prefs = io::preferences_to_json(pr);
  prefs["seed"] = seed;
  io::write_json(base / "prefs.json", prefs);
  Json summary;
  summary["command"] = "generate";
  summary["seed"] = seed;
  summary["props"] = sig.props();
  summary["files"] = Json::array({(base / "model.json").string(), (base / "menu.json").string(),
                                  (base / "prefs.json").string()});
  out << summary.dump(2) << '\n';
  return kPass;
}

int roundtrip_cmd(const std::string& props, const std::string& seeds, std::uint64_t pairs,
                  const std::string& out_path, std::ostream& out) {
  const auto sig = props_from(props);
  SynthesisOptions options;
  options.verify.pairs = pairs;
  std::vector<RoundtripEntry> entries;
  for (auto seed : parse_seeds(seeds)) {
    options.verify.seed = seed;
    entries.push_back(roundtrip_seed(sig, seed, options));
  }
  const auto doc = roundtrip_to_json(sig, entries);
  if (!out_path.empty()) io::write_json(out_path, doc);
  out << doc.dump(2) << '\n';
  return doc["passed"] == doc["total"] ? kPass : kFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Language-based decision theory: axiom checks and SEU synthesis", "dorep");
  app.require_subcommand(1);

  CheckConfig check;
  auto* check_cmd = app.add_subcommand("check-axioms", "Check the preference axioms; exit 2 with a witness on failure");
  check_cmd->add_option("--prefs", check.prefs, "Preference file")->required();
  check_cmd->add_option("--menu", check.menu, "Menu file")->required();
  check_cmd->add_option("--canc-n", check.canc_n, "Largest cancellation tuple length")->check(CLI::PositiveNumber);
  check_cmd->add_option("--budget", check.budget, "Cancellation tuples to sample");
  check_cmd->add_option("--seed", check.seed, "Sampling seed");
  check_cmd->add_option("--witness", check.witness, "Re-check a witness JSON instead of searching");

  SynthesizeConfig synth;
  auto* synth_cmd = app.add_subcommand("synthesize", "Build and verify an SEU representation");
  synth_cmd->add_option("--prefs", synth.prefs, "Preference file")->required();
  synth_cmd->add_option("--menu", synth.menu, "Menu file")->required();
  synth_cmd->add_option("--out", synth.out, "Output JSON path")->required();
  synth_cmd->add_option("--seed", synth.seed, "Verification sampling seed");
  synth_cmd->add_option("--pairs", synth.pairs, "Sampled pairs for large act spaces")->check(CLI::PositiveNumber);

  std::string model_path, act_text;
  auto* eval_cmd = app.add_subcommand("evaluate", "Interpret an action in a model");
  eval_cmd->add_option("--model", model_path, "Model file")->required();
  eval_cmd->add_option("--act", act_text, "Action expression")->required();

  std::string gen_props, gen_dir;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded model, menu and preference fixture");
  gen_cmd->add_option("--props", gen_props, "Comma-separated propositions")->required();
  gen_cmd->add_option("--seed", gen_seed, "Seed");
  gen_cmd->add_option("--out", gen_dir, "Output directory")->required();

  std::string rt_props, rt_seeds = "1", rt_out;
  std::uint64_t rt_pairs = 10'000;
  auto* rt_cmd = app.add_subcommand("roundtrip", "Generate, check, synthesize and verify over many seeds");
  rt_cmd->add_option("--props", rt_props, "Comma-separated propositions")->required();
  rt_cmd->add_option("--seeds", rt_seeds, "Seeds: N, A..B, or a comma list");
  rt_cmd->add_option("--pairs", rt_pairs, "Sampled pairs per seed")->check(CLI::PositiveNumber);
  rt_cmd->add_option("--out", rt_out, "Also write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (*check_cmd) return check_axioms(check, out);
    if (*synth_cmd) return synthesize_cmd(synth, out);
    if (*eval_cmd) return evaluate_cmd(model_path, act_text, out);
    if (*gen_cmd) return generate_cmd(gen_props, gen_seed, gen_dir, out);
    if (*rt_cmd) return roundtrip_cmd(rt_props, rt_seeds, rt_pairs, rt_out, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what();
    if (e.position()) err << " at offset " << *e.position();
    err << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUnexpected;
}

}  // namespace dorep::cli
