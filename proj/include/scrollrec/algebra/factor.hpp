#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/prng.hpp"
#include "scrollrec/algebra/upoly.hpp"

namespace scrollrec::algebra {

/// Irreducible factorization over Q of a univariate polynomial: monic
/// irreducible factors with multiplicities, sorted by degree then
/// coefficients. Constants give an empty list.
std::vector<std::pair<UPoly, int>> factor(const UPoly& p);

/// Irreducible factorization over Q of a polynomial with at most two
/// essential variables (Zassenhaus for one variable; evaluation, univariate
/// factorization, Hensel lifting in the second variable and recombination by
/// trial division for two). Factors are normalized; their product with
/// multiplicities equals p up to a rational unit. The seed only influences
/// the choice of evaluation points, never the result.
std::vector<SqfPart> factor(const MPoly& p, std::uint64_t seed = 1);

/// Sufficient irreducibility test: some specialization of one variable at a
/// random value keeps the degree in the other and is irreducible.
bool certify_irreducible(const MPoly& p, Prng& rng, int tries = 6);

}  // namespace scrollrec::algebra
