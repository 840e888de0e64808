#include "scrollrec/algebra/modular.hpp"

#include <mutex>

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra::modp {

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::inv(u64 a) const {
  if (a % p == 0) throw InvariantError("modp.inverse", "zero has no inverse");
  return pow(a, p - 2);
}

u64 Field::reduce(const Int& z) const {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

u64 next_prime(u64 from) {
  Int z(static_cast<unsigned long>(from));
  Int r;
  mpz_nextprime(r.get_mpz_t(), z.get_mpz_t());
  return r.get_ui();
}

u64 large_prime(int k) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= k) {
    u64 start = cache.empty() ? (1ULL << 31) : cache.back();
    // Walk downwards from 2^31.
    u64 c = start - 1;
    while (true) {
      Int z(static_cast<unsigned long>(c));
      if (mpz_probab_prime_p(z.get_mpz_t(), 30)) break;
      --c;
    }
    cache.push_back(c);
  }
  return cache[k];
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  trim(r);
  return r;
}

Poly scale(const Field& F, const Poly& a, u64 s) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw PreconditionError("modp.divmod", "division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly r = a;
  Poly q(a.size() - b.size() + 1, 0);
  const u64 inv_lc = F.inv(b.back());
  const int db = degree(b);
  for (int k = degree(r) - db; k >= 0; --k) {
    const u64 c = F.mul(r[k + db], inv_lc);
    q[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = F.sub(r[k + j], F.mul(c, b[j]));
  }
  trim(r);
  trim(q);
  return {q, r};
}

Poly rem(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

void xgcd(const Field& F, const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(F, r0, r1);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    g = {};
    s = {};
    t = {};
    return;
  }
  const u64 inv = F.inv(r0.back());
  g = scale(F, r0, inv);
  s = scale(F, s0, inv);
  t = scale(F, t0, inv);
}

Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

Poly powmod(const Field& F, const Poly& base, Int e, const Poly& m) {
  Poly result{1};
  Poly b = rem(F, base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem(F, mul(F, result, b), m);
    e >>= 1;
    if (e > 0) b = rem(F, mul(F, b, b), m);
  }
  return result;
}

Poly from_ints(const Field& F, const std::vector<Int>& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.reduce(a[i]);
  trim(r);
  return r;
}

namespace {

// Distinct-degree factorization: pairs (product of all irreducible factors of
// degree k, k).
std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, Poly f) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1};
  Poly h = x;
  int k = 0;
  while (degree(f) >= 2 * (k + 1)) {
    ++k;
    h = powmod(F, h, Int(static_cast<unsigned long>(F.p)), f);
    Poly g = gcd(F, f, sub(F, h, x));
    if (degree(g) > 0) {
      out.emplace_back(g, k);
      f = divmod(F, f, g).first;
      h = rem(F, h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

void equal_degree(const Field& F, const Poly& f, int k, Prng& rng, std::vector<Poly>& out) {
  const int n = degree(f);
  if (n == k) {
    out.push_back(monic(F, f));
    return;
  }
  Int p(static_cast<unsigned long>(F.p));
  Int e;
  mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  e = (e - 1) / 2;
  while (true) {
    Poly a(n);
    for (int i = 0; i < n; ++i) a[i] = rng.next() % F.p;
    trim(a);
    if (degree(a) <= 0) continue;
    Poly g = gcd(F, f, a);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(F, g, k, rng, out);
      equal_degree(F, divmod(F, f, g).first, k, rng, out);
      return;
    }
    Poly b = powmod(F, a, e, f);
    b = sub(F, b, Poly{1});
    g = gcd(F, f, b);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(F, g, k, rng, out);
      equal_degree(F, divmod(F, f, g).first, k, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Field& F, const Poly& f, Prng& rng) {
  if (F.p == 2) throw PreconditionError("modp.factor", "characteristic 2 unsupported");
  std::vector<Poly> out;
  Poly g = monic(F, f);
  if (degree(g) <= 0) return out;
  for (auto& [part, k] : distinct_degree(F, g)) equal_degree(F, part, k, rng, out);
  return out;
}

}  // namespace scrollrec::algebra::modp
