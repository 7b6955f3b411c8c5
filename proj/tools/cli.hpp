#pragma once

#include <iosfwd>

namespace dorep::cli {

/// Exit codes: 0 all checks pass, 2 an axiom or pipeline stage failed (the
/// witness is printed as JSON), 3 bad input (parse, precondition, richness,
/// cap), 1 anything unexpected.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dorep::cli
