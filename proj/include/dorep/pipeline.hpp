#pragma once

// Seeded fixture generation and the full check → synthesize → verify pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dorep/axioms.hpp"
#include "dorep/io.hpp"
#include "dorep/representation.hpp"

namespace dorep {

/// A centered, language-based induced model over the canonical model with the
/// rich menu, uniform π and distinct integer utilities drawn from [-8, 8].
struct Fixture {
  std::uint64_t seed;
  WellOrderFamily family;
  SEURepresentation rep;
};

/// Throws CapExceeded when the rich menu's act space exceeds `cap`, and
/// PreconditionViolation when there are more atoms than distinct utilities.
Fixture generate_fixture(const Signature& sig, std::uint64_t seed,
                         std::uint64_t cap = ActSpace::kDefaultCap);

struct SynthesisOptions {
  LpOptions lp;
  VerifyOptions verify;
};

/// Stage tags, in pipeline order: "cent", "ssc", "trans", "lp", "orders",
/// "lemma4", "lemma5", "eq2", "verify". Cancellation is not sampled here: an
/// infeasible LP is the complete signal for it.
struct SynthesisOutcome {
  std::vector<AxiomReport> reports;
  std::optional<std::string> failed_stage;
  std::optional<std::string> message;
  io::Json failure;
  std::optional<BuiltRepresentation> built;
  std::optional<VerifyReport> verification;

  bool passed() const { return !failed_stage.has_value(); }
};

/// Stops at the first failing stage. Richness and cap violations propagate as errors.
SynthesisOutcome synthesize(const PreferenceRelation& pr, const SynthesisOptions& options);

/// JSON document written by `synthesize`: the representation (when built),
/// verification result, axiom reports and provenance.
io::Json synthesis_to_json(const SynthesisOutcome& outcome, const PreferenceRelation& pr,
                           const SynthesisOptions& options);

struct RoundtripEntry {
  std::uint64_t seed;
  bool passed;
  std::optional<std::string> failed_stage;
  std::uint64_t classes;
  std::uint64_t verified_pairs;
  std::uint64_t disagreements;
};

RoundtripEntry roundtrip_seed(const Signature& sig, std::uint64_t seed, const SynthesisOptions& options);

/// Summary over all seeds; contains no timing so reruns are byte-identical.
io::Json roundtrip_to_json(const Signature& sig, const std::vector<RoundtripEntry>& entries);

}  // namespace dorep
