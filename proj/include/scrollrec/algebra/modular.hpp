#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scrollrec/algebra/prng.hpp"
#include "scrollrec/algebra/rat.hpp"

// Dense polynomial arithmetic over Z/p for word-size primes p < 2^31.
namespace scrollrec::algebra::modp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // low to high, no trailing zeros

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  u64 reduce(const Int& z) const;
};

/// The k-th prime below 2^31 (deterministic sequence, cached).
u64 large_prime(int k);
/// Primes in ascending order starting above `from`.
u64 next_prime(u64 from);

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, u64 s);
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
/// s*a + t*b = g (monic).
void xgcd(const Field& F, const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);
Poly derivative(const Field& F, const Poly& a);
Poly powmod(const Field& F, const Poly& base, Int e, const Poly& m);

/// Reduction of an integer polynomial.
Poly from_ints(const Field& F, const std::vector<Int>& a);

/// Irreducible monic factors of a monic squarefree polynomial.
std::vector<Poly> factor_squarefree(const Field& F, const Poly& f, Prng& rng);

}  // namespace scrollrec::algebra::modp
