#include "dorep/io.hpp"

#include <fstream>
#include <sstream>

#include "dorep/error.hpp"

namespace dorep::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorKind::Parse, std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, std::string(what) + " must be an array");
  return j;
}

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorKind::Parse, "rational values must be strings like \"3/16\" or integers");
}

Atom atom_from(const Json& j, const Signature& sig) {
  const auto label = text(j, "atom");
  auto a = parse_atom_label(label, sig);
  if (!a) throw Error(ErrorKind::Parse, "malformed atom label '" + label + "'");
  return *a;
}

std::size_t member_from(const Json& j, const Menu& menu) {
  const auto f = parse_formula(text(j, "menu formula"), menu.signature());
  auto idx = menu.index_of(f);
  if (!idx) throw Error(ErrorKind::MenuViolation, "'" + f.to_string() + "' is not in the menu");
  return *idx;
}

std::vector<Formula> formulas_from(const Json& j, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& f : array(j, "menu")) out.push_back(parse_formula(text(f, "menu formula"), sig));
  return out;
}

std::string member_string(const Menu& menu, std::size_t i) { return menu.at(i).to_string(); }

Json acts_to_json(const std::vector<CompiledAct>& acts, const Menu& menu) {
  Json out = Json::array();
  for (const auto& f : acts) out.push_back(act_string(f, menu));
  return out;
}

std::vector<CompiledAct> acts_from(const Json& j, const Menu& menu) {
  std::vector<CompiledAct> out;
  for (const auto& a : array(j, "act list")) out.push_back(act_from(a, menu));
  return out;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

Signature signature_from(const Json& j) {
  std::vector<std::string> props;
  for (const auto& p : array(field(j, "props"), "props")) props.push_back(text(p, "proposition"));
  return Signature(std::move(props));
}

Menu menu_from(const Json& j) {
  auto sig = signature_from(j);
  MenuOptions options;
  if (j.contains("collapse_equivalent")) {
    const auto& c = j.at("collapse_equivalent");
    if (!c.is_boolean()) throw Error(ErrorKind::Parse, "collapse_equivalent must be a boolean");
    options.collapse_equivalent = c.get<bool>();
  }
  auto formulas = formulas_from(field(j, "menu"), sig);
  return Menu(std::move(sig), std::move(formulas), options);
}

Json menu_to_json(const Menu& menu) {
  Json j;
  j["props"] = menu.signature().props();
  Json members = Json::array();
  for (const auto& f : menu.formulas()) members.push_back(f.to_string());
  j["menu"] = std::move(members);
  if (menu.collapses_equivalent()) j["collapse_equivalent"] = true;
  return j;
}

std::string act_string(const CompiledAct& f, const Menu& menu) {
  return canonical_act(f, menu).to_string();
}

CompiledAct act_from(const Json& j, const Menu& menu) {
  return compile(parse_action(text(j, "action"), menu.signature()), menu);
}

PreferenceRelation preferences_from(const Json& j, const Menu& menu) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "preference file must be a JSON object");
  if (j.contains("props") && !(signature_from(j) == menu.signature())) {
    throw Error(ErrorKind::InvalidPreference, "preference file props differ from the menu's");
  }
  if (j.contains("menu")) {
    const Menu own(menu.signature(), formulas_from(j.at("menu"), menu.signature()),
                   {menu.collapses_equivalent()});
    if (!(own == menu)) throw Error(ErrorKind::InvalidPreference, "preference file menu differs from the given menu");
  }
  std::vector<std::vector<CompiledAct>> classes;
  for (const auto& cls : array(field(j, "classes"), "classes")) {
    classes.push_back(acts_from(cls, menu));
  }
  auto pr = PreferenceRelation::from_partition(menu, classes);
  if (j.contains("strict")) {
    for (const auto& pair : array(j.at("strict"), "strict")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorKind::Parse, "each strict entry must be [better, worse]");
      }
      pr = pr.with_strict(act_from(pair[0], menu), act_from(pair[1], menu));
    }
  }
  return pr;
}

Json preferences_to_json(const PreferenceRelation& pr) {
  const auto& menu = pr.menu();
  const ActSpace space(menu);
  Json j = menu_to_json(menu);
  Json classes = Json::array();
  for (const auto& cls : pr.base_classes(space)) {
    Json members = Json::array();
    for (auto idx : cls) members.push_back(act_string(space.at(idx), menu));
    classes.push_back(std::move(members));
  }
  j["classes"] = std::move(classes);
  if (pr.has_overrides()) {
    Json strict = Json::array();
    for (const auto& [better, worse] : pr.strict_overrides()) {
      strict.push_back(Json::array({act_string(better, menu), act_string(worse, menu)}));
    }
    j["strict"] = std::move(strict);
  }
  return j;
}

// ---------------------------------------------------------------------------

ModelFile model_from(const Json& j) {
  auto sig = signature_from(j);
  std::vector<std::string> states;
  for (const auto& s : array(field(j, "states"), "states")) states.push_back(text(s, "state id"));
  std::map<std::string, std::vector<std::string>> valuation;
  const auto& val = field(j, "valuation");
  if (!val.is_object()) throw Error(ErrorKind::Parse, "valuation must be an object");
  for (const auto& [prop, holds] : val.items()) {
    auto& list = valuation[prop];
    for (const auto& s : array(holds, "valuation entry")) list.push_back(text(s, "state id"));
  }
  auto model = BasicModel::from_valuation(sig, states, valuation);

  const auto& ord = field(j, "orders");
  if (!ord.is_object()) throw Error(ErrorKind::Parse, "orders must be an object keyed by state id");
  std::vector<std::vector<std::size_t>> ranked(model.size());
  std::vector<bool> given(model.size(), false);
  for (const auto& [base, list] : ord.items()) {
    auto b = model.index_of(base);
    if (!b) throw Error(ErrorKind::InvalidModel, "orders name unknown state '" + base + "'");
    given[*b] = true;
    for (const auto& s : array(list, "order")) {
      const auto id = text(s, "state id");
      auto idx = model.index_of(id);
      if (!idx) throw Error(ErrorKind::InvalidModel, "order for '" + base + "' names unknown state '" + id + "'");
      ranked[*b].push_back(*idx);
    }
  }
  for (std::size_t s = 0; s < model.size(); ++s) {
    if (!given[s]) throw Error(ErrorKind::InvalidModel, "no order given for state '" + model.state_name(s) + "'");
  }
  MenuOptions options;
  if (j.contains("collapse_equivalent")) options.collapse_equivalent = j.at("collapse_equivalent").get<bool>();
  Menu menu(sig, formulas_from(field(j, "menu"), sig), options);
  auto sm = induce_selection(model, WellOrderFamily(std::move(ranked)), menu);

  auto per_state = [&](const char* key) -> std::optional<std::vector<Rational>> {
    if (!j.contains(key)) return std::nullopt;
    const auto& obj = j.at(key);
    if (!obj.is_object()) throw Error(ErrorKind::Parse, std::string(key) + " must be an object keyed by state id");
    std::vector<Rational> values(model.size());
    std::vector<bool> seen(model.size(), false);
    for (const auto& [state, v] : obj.items()) {
      auto idx = model.index_of(state);
      if (!idx) throw Error(ErrorKind::InvalidModel, std::string(key) + " names unknown state '" + state + "'");
      values[*idx] = rational_from(v);
      seen[*idx] = true;
    }
    for (std::size_t s = 0; s < model.size(); ++s) {
      if (!seen[s]) {
        throw Error(ErrorKind::InvalidModel, std::string(key) + " has no value for '" + model.state_name(s) + "'");
      }
    }
    return values;
  };
  auto pi = per_state("pi");
  auto u = per_state("u");
  if (pi.has_value() != u.has_value()) throw Error(ErrorKind::InvalidModel, "pi and u must be given together");
  // constructing the representation validates pi
  if (pi) SEURepresentation(sm, *pi, *u);
  return ModelFile{std::move(sm), std::move(pi), std::move(u)};
}

Json model_to_json(const SelectionModel& sm, const std::vector<Rational>* probability,
                   const std::vector<Rational>* utility) {
  const auto& model = sm.model();
  const auto& sig = model.signature();
  if (!sm.family()) throw Error(ErrorKind::InvalidModel, "only selections induced by well-orders can be written");
  Json j;
  j["props"] = sig.props();
  j["states"] = model.state_names();
  Json valuation = Json::object();
  for (std::size_t p = 0; p < sig.size(); ++p) {
    Json holds = Json::array();
    for (std::size_t s = 0; s < model.size(); ++s) {
      if (model.atom_of(s).has(p)) holds.push_back(model.state_name(s));
    }
    valuation[sig.name(p)] = std::move(holds);
  }
  j["valuation"] = std::move(valuation);
  Json orders = Json::object();
  for (std::size_t s = 0; s < model.size(); ++s) {
    Json ranked = Json::array();
    for (auto t : sm.family()->order(s)) ranked.push_back(model.state_name(t));
    orders[model.state_name(s)] = std::move(ranked);
  }
  j["orders"] = std::move(orders);
  j["menu"] = menu_to_json(sm.menu())["menu"];
  if (sm.menu().collapses_equivalent()) j["collapse_equivalent"] = true;
  auto per_state = [&](const std::vector<Rational>& values) {
    Json obj = Json::object();
    for (std::size_t s = 0; s < model.size(); ++s) obj[model.state_name(s)] = to_string(values.at(s));
    return obj;
  };
  if (probability && utility) {
    j["pi"] = per_state(*probability);
    j["u"] = per_state(*utility);
  }
  return j;
}

// ---------------------------------------------------------------------------

Json witness_to_json(const Witness& witness, const Menu& menu) {
  const auto& sig = menu.signature();
  struct Visitor {
    const Menu& menu;
    const Signature& sig;

    Json operator()(const CentWitness& w) const {
      Json j;
      j["kind"] = "cent";
      j["condition"] = member_string(menu, w.condition);
      j["effect"] = member_string(menu, w.effect);
      j["acts"] = Json::array({Action::guarded(menu.at(w.condition), Action::make_do(menu.at(w.effect))).to_string(),
                               Action::make_do(menu.at(menu.true_index())).to_string()});
      return j;
    }
    Json operator()(const SscWitness& w) const {
      Json j;
      j["kind"] = "ssc";
      j["whole"] = member_string(menu, w.whole);
      Json parts = Json::array();
      Json breakers = Json::array();
      for (auto p : w.parts) parts.push_back(member_string(menu, p));
      for (auto b : w.breakers) breakers.push_back(member_string(menu, b));
      j["parts"] = std::move(parts);
      j["atom"] = atom_label(sig, w.atom);
      j["breakers"] = std::move(breakers);
      return j;
    }
    Json operator()(const TransWitness& w) const {
      Json j;
      j["kind"] = "trans";
      j["w"] = atom_label(sig, w.w);
      j["x"] = atom_label(sig, w.x);
      j["y"] = atom_label(sig, w.y);
      j["z"] = atom_label(sig, w.z);
      return j;
    }
    Json operator()(const CancWitness& w) const {
      Json j;
      j["kind"] = "canc";
      j["alphas"] = acts_to_json(w.alphas, menu);
      j["betas"] = acts_to_json(w.betas, menu);
      return j;
    }
    Json operator()(const ReflexivityWitness& w) const {
      Json j;
      j["kind"] = "reflexivity";
      j["act"] = act_string(w.act, menu);
      return j;
    }
    Json operator()(const TransitivityWitness& w) const {
      Json j;
      j["kind"] = "transitivity";
      j["a"] = act_string(w.a, menu);
      j["b"] = act_string(w.b, menu);
      j["c"] = act_string(w.c, menu);
      return j;
    }
    Json operator()(const IndependenceWitness& w) const {
      Json j;
      j["kind"] = "independence";
      Json cond = Json::array();
      for (auto a : w.condition.atoms()) cond.push_back(atom_label(sig, a));
      j["condition"] = std::move(cond);
      j["alpha"] = act_string(w.alpha, menu);
      j["beta"] = act_string(w.beta, menu);
      j["gamma"] = act_string(w.gamma, menu);
      j["gamma_prime"] = act_string(w.gamma_prime, menu);
      return j;
    }
  };
  return std::visit(Visitor{menu, sig}, witness);
}

Witness witness_from(const Json& j, const Menu& menu) {
  const auto& sig = menu.signature();
  const auto kind = text(field(j, "kind"), "witness kind");
  if (kind == "cent") {
    return CentWitness{member_from(field(j, "condition"), menu), member_from(field(j, "effect"), menu)};
  }
  if (kind == "ssc") {
    SscWitness w{member_from(field(j, "whole"), menu), {}, atom_from(field(j, "atom"), sig), {}};
    for (const auto& p : array(field(j, "parts"), "parts")) w.parts.push_back(member_from(p, menu));
    for (const auto& b : array(field(j, "breakers"), "breakers")) w.breakers.push_back(member_from(b, menu));
    return w;
  }
  if (kind == "trans") {
    return TransWitness{atom_from(field(j, "w"), sig), atom_from(field(j, "x"), sig),
                        atom_from(field(j, "y"), sig), atom_from(field(j, "z"), sig)};
  }
  if (kind == "canc") {
    return CancWitness{acts_from(field(j, "alphas"), menu), acts_from(field(j, "betas"), menu)};
  }
  if (kind == "reflexivity") return ReflexivityWitness{act_from(field(j, "act"), menu)};
  if (kind == "transitivity") {
    return TransitivityWitness{act_from(field(j, "a"), menu), act_from(field(j, "b"), menu),
                               act_from(field(j, "c"), menu)};
  }
  if (kind == "independence") {
    TruthSet cond(sig.atom_count());
    for (const auto& a : array(field(j, "condition"), "condition")) cond.insert(atom_from(a, sig));
    return IndependenceWitness{cond, act_from(field(j, "alpha"), menu), act_from(field(j, "beta"), menu),
                               act_from(field(j, "gamma"), menu), act_from(field(j, "gamma_prime"), menu)};
  }
  throw Error(ErrorKind::Parse, "unknown witness kind '" + kind + "'");
}

Json coverage_to_json(const Coverage& c) {
  Json j;
  if (c.kind == Coverage::Kind::Exhaustive) {
    j["kind"] = "exhaustive";
  } else {
    j["kind"] = "sampled";
    j["seed"] = c.seed;
  }
  j["count"] = c.count;
  return j;
}

Json report_to_json(const AxiomReport& report, const Menu& menu) {
  Json j;
  j["axiom"] = to_string(report.axiom);
  j["verdict"] = report.passed ? "pass" : "fail";
  j["coverage"] = coverage_to_json(report.coverage);
  if (report.witness) j["witness"] = witness_to_json(*report.witness, menu);
  return j;
}

Json certificate_to_json(const LpInfeasibility& lp, const Menu& menu) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    const auto& y = lp.certificate.multipliers[k];
    if (sgn(y) == 0) continue;
    Json row;
    row["better"] = act_string(lp.pairs[k].first, menu);
    row["worse"] = act_string(lp.pairs[k].second, menu);
    row["relation"] = lp.constraints[k].sense == LinearConstraint::Sense::AtLeast ? "strict" : "indifferent";
    row["multiplier"] = to_string(y);
    rows.push_back(std::move(row));
  }
  Json j;
  j["constraints_used"] = std::move(rows);
  j["constraint_count"] = lp.constraints.size();
  if (lp.canc) j["canc_witness"] = witness_to_json(*lp.canc, menu);
  return j;
}

Json verify_to_json(const VerifyReport& v, const Menu& menu) {
  Json j;
  j["verdict"] = v.passed ? "pass" : "fail";
  j["coverage"] = coverage_to_json(v.coverage);
  if (v.witness) {
    j["witness"] = Json::array({act_string(v.witness->first, menu), act_string(v.witness->second, menu)});
  }
  return j;
}

Json representation_to_json(const BuiltRepresentation& built) {
  const auto& rep = built.rep;
  const auto& menu = rep.selection().menu();
  const auto& sig = menu.signature();
  Json j = model_to_json(rep.selection(), &rep.probability(), &rep.utility());
  Json pairs = Json::object();
  for (std::size_t s = 0; s < built.state_pairs.size(); ++s) {
    pairs[rep.selection().model().state_name(s)] =
        Json::array({atom_label(sig, built.state_pairs[s].first), atom_label(sig, built.state_pairs[s].second)});
  }
  j["state_pairs"] = std::move(pairs);
  Json orders = Json::object();
  for (std::size_t w = 0; w < built.orders.size(); ++w) {
    Json ranked = Json::array();
    for (auto x : built.orders[w]) ranked.push_back(atom_label(sig, x));
    orders[atom_label(sig, Atom{static_cast<std::uint32_t>(w)})] = std::move(ranked);
  }
  j["atom_orders"] = std::move(orders);
  Json u_star = Json::object();
  for (auto w : all_atoms(sig)) {
    Json row = Json::object();
    for (std::size_t phi = 0; phi < menu.size(); ++phi) row[menu.at(phi).to_string()] = to_string(built.u_star.at(w, phi));
    u_star[atom_label(sig, w)] = std::move(row);
  }
  j["u_star"] = std::move(u_star);
  return j;
}

}  // namespace dorep::io
