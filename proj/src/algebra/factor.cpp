#include "scrollrec/algebra/factor.hpp"

#include <algorithm>
#include <functional>

#include "scrollrec/algebra/modular.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

// ---------------------------------------------------------------------------
// Dense integer polynomials modulo M (coefficients kept in [0, M)).

using ZP = std::vector<Int>;

void ztrim(ZP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZP zred(ZP a, const Int& M) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
  ztrim(a);
  return a;
}

ZP zadd(const ZP& a, const ZP& b, const Int& M) {
  ZP r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zred(std::move(r), M);
}

ZP zsub(const ZP& a, const ZP& b, const Int& M) {
  ZP r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zred(std::move(r), M);
}

ZP zmul(const ZP& a, const ZP& b, const Int& M) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return zred(std::move(r), M);
}

ZP zscale(const ZP& a, const Int& s, const Int& M) {
  ZP r = a;
  for (auto& c : r) c *= s;
  return zred(std::move(r), M);
}

// Division by a monic polynomial modulo M.
std::pair<ZP, ZP> zdivmod(const ZP& a, const ZP& b, const Int& M) {
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return {{}, a};
  ZP r = a;
  ZP q(a.size() - db, Int(0));
  for (int k = static_cast<int>(a.size()) - 1 - db; k >= 0; --k) {
    Int c = r[k + db];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    q[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  r.resize(db);
  return {zred(std::move(q), M), zred(std::move(r), M)};
}

ZP from_modp(const modp::Poly& a) {
  ZP r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

Int inverse_mod(const Int& a, const Int& M) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t()))
    throw InvariantError("factor.hensel", "leading coefficient not invertible");
  return r;
}

// Quadratic Hensel lifting along a balanced factor tree. f has leading
// coefficient lc (a unit mod p); factors are monic modulo p. Returns monic
// factors modulo p^k whose product times lc is f modulo p^k.
std::vector<ZP> hensel_lift(const ZP& f, const std::vector<modp::Poly>& factors, const modp::Field& F,
                            const Int& pk) {
  if (factors.size() == 1) return {zscale(f, inverse_mod(f.back(), pk), pk)};
  const std::size_t half = factors.size() / 2;
  std::vector<modp::Poly> left(factors.begin(), factors.begin() + half);
  std::vector<modp::Poly> right(factors.begin() + half, factors.end());
  modp::Poly g0{F.reduce(f.back())}, h0{1};
  for (auto& u : left) g0 = modp::mul(F, g0, u);
  for (auto& u : right) h0 = modp::mul(F, h0, u);
  modp::Poly gg, s0, t0;
  modp::xgcd(F, g0, h0, gg, s0, t0);
  ZP g = from_modp(g0), h = from_modp(h0), s = from_modp(s0), t = from_modp(t0);
  Int m(static_cast<unsigned long>(F.p));
  while (m < pk) {
    const Int m2 = m * m;
    ZP e = zsub(f, zmul(g, h, m2), m2);
    auto [q, r] = zdivmod(zmul(s, e, m2), h, m2);
    ZP g1 = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
    ZP h1 = zadd(h, r, m2);
    ZP b = zsub(zadd(zmul(s, g1, m2), zmul(t, h1, m2), m2), ZP{Int(1)}, m2);
    auto [c, d] = zdivmod(zmul(s, b, m2), h1, m2);
    s = zsub(s, d, m2);
    t = zsub(t, zadd(zmul(t, b, m2), zmul(c, g1, m2), m2), m2);
    g = std::move(g1);
    h = std::move(h1);
    m = m2;
  }
  g = zred(g, pk);
  h = zred(h, pk);
  auto a = hensel_lift(g, left, F, pk);
  auto b = hensel_lift(h, right, F, pk);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

UPoly symmetric_to_upoly(const ZP& a, const Int& M) {
  const Int half = M / 2;
  std::vector<Rat> c;
  for (const auto& v : a) c.emplace_back(v > half ? Int(v - M) : v);
  return UPoly(std::move(c));
}

std::vector<Int> int_coeffs(const UPoly& p) {
  std::vector<Int> r;
  for (const auto& c : p.coeffs()) r.push_back(c.get_num());
  return r;
}

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// f: squarefree, integer primitive, positive degree.
std::vector<UPoly> factor_squarefree_int(const UPoly& f) {
  const int n = f.degree();
  if (n == 1) return {f.monic()};
  const std::vector<Int> fi = int_coeffs(f);
  const Int lc = fi.back();
  Prng rng(0x5eed + n);
  // Pick the prime with the fewest modular factors among a few candidates.
  modp::u64 best_p = 0;
  std::vector<modp::Poly> best;
  modp::u64 p = 10007;
  int good = 0;
  for (int attempt = 0; attempt < 200 && good < 5; ++attempt) {
    p = modp::next_prime(p);
    const modp::Field F{p};
    if (F.reduce(lc) == 0) continue;
    const modp::Poly fp = modp::from_ints(F, fi);
    if (modp::degree(modp::gcd(F, fp, modp::derivative(F, fp))) != 0) continue;
    ++good;
    auto fac = modp::factor_squarefree(F, fp, rng);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1) return {f.monic()};
  }
  if (best_p == 0) throw InvariantError("factor.prime", "no suitable prime found");
  const modp::Field F{best_p};
  // Coefficient bound for factors times |lc|.
  Int norm2 = 0;
  for (const auto& c : fi) norm2 += c * c;
  Int norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Int bound = 2 * abs(lc) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  Int pk = static_cast<unsigned long>(best_p);
  while (pk <= bound) pk *= static_cast<unsigned long>(best_p);
  ZP fz;
  for (const auto& c : fi) fz.push_back(c);
  fz = zred(fz, pk);
  std::vector<ZP> lifted = hensel_lift(fz, best, F, pk);

  std::vector<UPoly> result;
  UPoly rest = f;
  std::vector<ZP> pool = lifted;
  int k = 1;
  while (2 * k <= static_cast<int>(pool.size())) {
    bool found = false;
    for_each_subset(static_cast<int>(pool.size()), k, [&](const std::vector<int>& sub) {
      const Int lcr = int_coeffs(rest.primitive()).back();
      ZP prod{lcr};
      for (int i : sub) prod = zmul(prod, pool[i], pk);
      UPoly cand = symmetric_to_upoly(prod, pk).primitive();
      if (cand.degree() <= 0) return false;
      auto [q, r] = divmod(rest, cand);
      if (!r.is_zero()) return false;
      result.push_back(cand.monic());
      rest = q.primitive();
      std::vector<ZP> next;
      for (int i = 0; i < static_cast<int>(pool.size()); ++i)
        if (std::find(sub.begin(), sub.end(), i) == sub.end()) next.push_back(pool[i]);
      pool = std::move(next);
      found = true;
      return true;
    });
    if (!found) ++k;
  }
  if (rest.degree() > 0) result.push_back(rest.monic());
  return result;
}

bool upoly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

// ---------------------------------------------------------------------------
// Bivariate: polynomials in x whose coefficients are truncated series in z.

using SPoly = std::vector<UPoly>;

SPoly smul(const SPoly& a, const SPoly& b, int K) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += (a[i] * b[j]).truncate(K);
  return r;
}

UPoly series_inverse(const UPoly& a, int K) {
  // Newton iteration for 1/a mod z^K.
  UPoly inv(Rat(1 / a.coeff(0)));
  int prec = 1;
  while (prec < K) {
    prec = std::min(2 * prec, K);
    inv = (inv * (UPoly(Rat(2)) - (a * inv).truncate(prec))).truncate(prec);
  }
  return inv;
}

MPoly spoly_to_mpoly(const SPoly& a, const RingPtr& ring, int x, int y, const Rat& y0) {
  // z = y - y0
  MPoly r(ring);
  const MPoly zy = MPoly::variable(ring, y) - MPoly(ring, y0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    MPoly ci(ring);
    const UPoly& c = a[i];
    for (int k = c.degree(); k >= 0; --k) ci = ci * zy + MPoly(ring, c.coeff(k));
    r += ci * MPoly::monomial(ring, Monomial::of_var(x, static_cast<int>(i)));
  }
  return r;
}

// f squarefree with used variables exactly {x, y}, primitive in both.
std::vector<MPoly> factor_bivariate_primitive(const MPoly& f, int x, int y, Prng& rng) {
  const RingPtr& ring = f.ring();
  const int n = f.degree(x);
  const MPoly lcx = f.coeff_of(x, n);
  // Choose an evaluation point with the fewest univariate factors.
  Rat y0;
  std::vector<UPoly> ufac;
  int good = 0;
  for (int attempt = 0; attempt < 60 && good < 3; ++attempt) {
    const Rat cand(attempt < 5 ? attempt : rng.uniform(-50, 50));
    if (lcx.eval(y, cand).is_zero()) continue;
    const UPoly fu = f.eval(y, cand).to_upoly(x);
    if (fu.degree() != n || gcd(fu, fu.derivative()).degree() != 0) continue;
    ++good;
    std::vector<UPoly> fac;
    for (auto& [g, m] : factor(fu)) fac.push_back(g);
    if (ufac.empty() || fac.size() < ufac.size()) {
      ufac = std::move(fac);
      y0 = cand;
    }
    if (ufac.size() == 1) return {f.normalized()};
  }
  if (good == 0) throw RetryError("factor.evaluation", "no good evaluation point found");
  const int r = static_cast<int>(ufac.size());

  // f(x, y0 + z) as a polynomial in x with coefficients in Q[z].
  const MPoly shifted = f.subs(y, MPoly::variable(ring, y) + MPoly(ring, y0));
  SPoly F(n + 1);
  for (int i = 0; i <= n; ++i) F[i] = shifted.coeff_of(x, i).to_upoly(y);
  const int degz = shifted.degree(y);
  const int K = degz + F[n].degree() + 1;
  const UPoly linv = series_inverse(F[n], K);
  SPoly Fm(n + 1);
  for (int i = 0; i <= n; ++i) Fm[i] = (F[i] * linv).truncate(K);

  // Bezout cofactors sigma_i = (prod_{j != i} u_j)^{-1} mod u_i.
  std::vector<UPoly> sigma(r);
  for (int i = 0; i < r; ++i) {
    UPoly others(Rat(1));
    for (int j = 0; j < r; ++j)
      if (j != i) others = others * ufac[j];
    sigma[i] = inverse_mod(others, ufac[i]);
  }
  std::vector<SPoly> g(r);
  for (int i = 0; i < r; ++i) {
    g[i].resize(ufac[i].degree() + 1);
    for (int c = 0; c <= ufac[i].degree(); ++c) g[i][c] = UPoly(ufac[i].coeff(c));
  }
  for (int k = 1; k < K; ++k) {
    SPoly prod{UPoly(Rat(1))};
    for (int i = 0; i < r; ++i) prod = smul(prod, g[i], k + 1);
    std::vector<Rat> e(n, Rat(0));
    for (int c = 0; c < n; ++c) {
      Rat v = Fm[c].coeff(k);
      if (c < static_cast<int>(prod.size())) v -= prod[c].coeff(k);
      e[c] = v;
    }
    const UPoly err(e);
    if (err.is_zero()) continue;
    for (int i = 0; i < r; ++i) {
      const UPoly delta = (sigma[i] * err) % ufac[i];
      for (int c = 0; c <= delta.degree(); ++c) g[i][c] += UPoly(delta.coeff(c)).shift_up(k);
    }
  }

  // Recombination.
  std::vector<MPoly> result;
  MPoly rest = f;
  std::vector<int> pool(r);
  for (int i = 0; i < r; ++i) pool[i] = i;
  int k = 1;
  while (2 * k <= static_cast<int>(pool.size())) {
    bool found = false;
    for_each_subset(static_cast<int>(pool.size()), k, [&](const std::vector<int>& sub) {
      const MPoly restz = rest.subs(y, MPoly::variable(ring, y) + MPoly(ring, y0));
      const UPoly lz = restz.coeff_of(x, rest.degree(x)).to_upoly(y);
      SPoly prod{lz.truncate(K)};
      for (int i : sub) prod = smul(prod, g[pool[i]], K);
      MPoly cand = spoly_to_mpoly(prod, ring, x, y, y0);
      if (cand.degree(x) <= 0) return false;
      cand = primitive_in(cand, x);
      auto q = try_divide(rest, cand);
      if (!q) return false;
      result.push_back(cand.normalized());
      rest = *q;
      std::vector<int> next;
      for (int i = 0; i < static_cast<int>(pool.size()); ++i)
        if (std::find(sub.begin(), sub.end(), i) == sub.end()) next.push_back(pool[i]);
      pool = std::move(next);
      found = true;
      return true;
    });
    if (!found) ++k;
  }
  if (!rest.is_constant()) result.push_back(rest.normalized());
  return result;
}

std::vector<MPoly> factor_univariate_mpoly(const MPoly& f, int v) {
  std::vector<MPoly> out;
  for (auto& [g, m] : factor(f.to_upoly(v)))
    for (int i = 0; i < m; ++i) out.push_back(MPoly::from_upoly(f.ring(), g, v).normalized());
  return out;
}

// f squarefree, exactly two used variables.
std::vector<MPoly> factor_bivariate_sqf(const MPoly& f, int x, int y, Prng& rng) {
  std::vector<MPoly> out;
  MPoly g = f;
  const MPoly cx = content_in(g, x);  // in y only
  if (!cx.is_constant()) {
    auto part = factor_univariate_mpoly(cx, y);
    out.insert(out.end(), part.begin(), part.end());
    g = divide_exact(g, cx);
  }
  const MPoly cy = content_in(g, y);  // in x only
  if (!cy.is_constant()) {
    auto part = factor_univariate_mpoly(cy, x);
    out.insert(out.end(), part.begin(), part.end());
    g = divide_exact(g, cy);
  }
  const auto used = g.used_vars();
  if (used.size() == 2) {
    // Main variable: the one of smaller degree.
    const int mx = g.degree(x) <= g.degree(y) ? x : y;
    const int my = mx == x ? y : x;
    auto part = factor_bivariate_primitive(g, mx, my, rng);
    out.insert(out.end(), part.begin(), part.end());
  } else if (used.size() == 1) {
    auto part = factor_univariate_mpoly(g, used[0]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

std::vector<std::pair<UPoly, int>> factor(const UPoly& p) {
  if (p.is_zero()) throw PreconditionError("factor.input", "zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  for (auto& [part, mult] : squarefree(p)) {
    UPoly f = part;
    const int v = f.valuation();
    if (v > 0) {
      out.emplace_back(UPoly::x(1), mult * v);
      f = divide_exact(f, UPoly::x(v));
    }
    if (f.degree() <= 0) continue;
    for (auto& g : factor_squarefree_int(f.primitive())) out.emplace_back(g, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return upoly_less(a.first, b.first); });
  // Merge equal factors (x can appear from several parts only once, but stay safe).
  std::vector<std::pair<UPoly, int>> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  return merged;
}

std::vector<SqfPart> factor(const MPoly& p, std::uint64_t seed) {
  if (p.is_zero()) throw PreconditionError("factor.input", "zero polynomial");
  const auto vars = p.used_vars();
  if (vars.size() > 2 && !(p.is_homogeneous() && vars.size() == 3))
    throw PreconditionError("factor.variables", "more than two essential variables");
  Prng rng(seed);
  std::vector<SqfPart> out;
  for (const auto& part : squarefree_decomposition(p)) {
    const MPoly& f = part.factor;
    const auto fv = f.used_vars();
    std::vector<MPoly> irr;
    if (fv.size() == 1) {
      irr = factor_univariate_mpoly(f, fv[0]);
    } else if (f.is_homogeneous()) {
      // Dehomogenize on the first variable and factor the rest.
      const int h = fv.front();
      MPoly a = f.eval(h, Rat(1));
      std::vector<SqfPart> sub = factor(a, rng.next());
      for (auto& s : sub)
        for (int i = 0; i < s.multiplicity; ++i) irr.push_back(s.factor.homogenize(h, s.factor.degree()).normalized());
    } else {
      irr = factor_bivariate_sqf(f, fv[0], fv[1], rng);
    }
    for (auto& g : irr) out.push_back({g, part.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const SqfPart& a, const SqfPart& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return a.factor.str() < b.factor.str();
  });
  std::vector<SqfPart> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().factor == e.factor)
      merged.back().multiplicity += e.multiplicity;
    else
      merged.push_back(e);
  }
  return merged;
}

bool certify_irreducible(const MPoly& p, Prng& rng, int tries) {
  const auto vars = p.used_vars();
  if (vars.empty()) return false;
  if (vars.size() == 1) {
    auto f = factor(p.to_upoly(vars[0]));
    return f.size() == 1 && f[0].second == 1;
  }
  if (vars.size() != 2) throw PreconditionError("factor.variables", "more than two essential variables");
  for (int attempt = 0; attempt < tries; ++attempt) {
    const int ev = vars[attempt % 2], keep = vars[1 - attempt % 2];
    const Rat v(rng.uniform(-40, 40));
    const MPoly spec = p.eval(ev, v);
    if (spec.degree(keep) != p.degree(keep)) continue;
    auto f = factor(spec.to_upoly(keep));
    if (f.size() == 1 && f[0].second == 1) return true;
  }
  return false;
}

}  // namespace scrollrec::algebra
