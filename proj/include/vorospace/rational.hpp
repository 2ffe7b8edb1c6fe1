#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace vw {

/// Exact coordinate type. Every predicate and construction in the library is
/// evaluated over these, so ties and degeneracies are decided exactly.
using Rational = mpq_class;

/// Sign of a rational as -1, 0 or +1.
inline int sign(const Rational& r) { return sgn(r); }

/// Prints `num/den` in lowest terms; the denominator is always present.
std::string to_string(const Rational& r);

/// Parses a decimal literal (`-12`, `3.25`, `1e-3`, `.5`) or a fraction
/// (`7/3`) exactly. Returns nullopt on malformed text.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace vw
