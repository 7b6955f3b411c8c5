#pragma once

// JSON forms of menus, preference files, model files, axiom reports and
// synthesized representations. Rationals are written as strings ("3/16").

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dorep/axioms.hpp"
#include "dorep/representation.hpp"

namespace dorep::io {

/// Keeps keys in insertion order so output is stable and readable.
using Json = nlohmann::ordered_json;

/// Throws Io when the file cannot be read, Parse when it is not JSON.
Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

Signature signature_from(const Json& j);
/// `{"props": [...], "menu": [...], "collapse_equivalent": false}`.
Menu menu_from(const Json& j);
Json menu_to_json(const Menu& menu);

/// `{"classes": [[action, ...], ...], "strict": [[better, worse], ...]}`. When
/// the file also names props or a menu, they must agree with `menu`.
PreferenceRelation preferences_from(const Json& j, const Menu& menu);
/// Ordered partition (best class first) with canonical action strings.
Json preferences_to_json(const PreferenceRelation& pr);

struct ModelFile {
  SelectionModel sm;
  std::optional<std::vector<Rational>> probability;
  std::optional<std::vector<Rational>> utility;
};

/// `{"props", "states", "valuation", "orders", "menu"}` plus optional
/// `"pi"` and `"u"` objects keyed by state id.
ModelFile model_from(const Json& j);
/// Requires a selection induced by a well-order family.
Json model_to_json(const SelectionModel& sm, const std::vector<Rational>* probability,
                   const std::vector<Rational>* utility);

std::string act_string(const CompiledAct& f, const Menu& menu);
CompiledAct act_from(const Json& j, const Menu& menu);

Json witness_to_json(const Witness& w, const Menu& menu);
Witness witness_from(const Json& j, const Menu& menu);
Json report_to_json(const AxiomReport& report, const Menu& menu);
Json coverage_to_json(const Coverage& c);

Json certificate_to_json(const LpInfeasibility& lp, const Menu& menu);
Json verify_to_json(const VerifyReport& v, const Menu& menu);

/// Model file of the paired model plus atom orders, u*, and state pairs.
Json representation_to_json(const BuiltRepresentation& built);

}  // namespace dorep::io
