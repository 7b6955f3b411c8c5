#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dorep {

using Rational = mpq_class;

/// Canonical "n/d" form; integers print without a denominator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Accepts "n", "-n", "n/d". Throws dorep::Error on malformed input or d == 0.
Rational parse_rational(std::string_view text);

}  // namespace dorep
