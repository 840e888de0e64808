#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace scrollrec::algebra {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "12", "-3/4" (no whitespace). Throws ParseError.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& r);
std::string to_string(const Int& z);

/// Least common multiple of all denominators.
Int common_denominator(const std::vector<Rat>& values);

/// Positive gcd of all numerators divided by lcm of denominators; zero for an
/// all-zero list.
Rat content_of(const std::vector<Rat>& values);

inline int sign(const Rat& r) { return sgn(r); }

}  // namespace scrollrec::algebra
