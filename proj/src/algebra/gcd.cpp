#include "scrollrec/algebra/gcd.hpp"

#include <algorithm>
#include <map>

#include "scrollrec/algebra/upoly.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

MPoly one(const RingPtr& ring) { return MPoly(ring, Rat(1)); }

// Newton interpolation of polynomial-valued samples in variable y.
MPoly interpolate_in(const RingPtr& ring, int y, const std::vector<Rat>& xs, std::vector<MPoly> vals) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      vals[i] = (vals[i] - vals[i - 1]) * Rat(1 / (xs[i] - xs[i - j]));
      if (i == j) break;
    }
  MPoly yv = MPoly::variable(ring, y);
  MPoly acc = vals[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) acc = acc * (yv - MPoly(ring, xs[k])) + vals[k];
  return acc;
}

MPoly gcd_core(const MPoly& a, const MPoly& b);

// Brown's dense evaluation/interpolation gcd for inputs primitive in x.
MPoly gcd_primitive(const MPoly& a, const MPoly& b, int x, int y) {
  const RingPtr& ring = a.ring();
  const MPoly la = a.coeff_of(x, a.degree(x));
  const MPoly lb = b.coeff_of(x, b.degree(x));
  const MPoly gamma = gcd_core(la, lb);
  const int bound = std::min(a.degree(y), b.degree(y)) + std::max(gamma.degree(y), 0);
  int best = std::min(a.degree(x), b.degree(x)) + 1;
  std::vector<Rat> xs;
  std::vector<MPoly> vals;
  for (long k = 1; k < 100000; ++k) {
    const Rat yk(k);
    if (la.eval(y, yk).is_zero() || lb.eval(y, yk).is_zero()) continue;
    MPoly gk = gcd_core(a.eval(y, yk), b.eval(y, yk));
    const int dk = gk.degree(x);
    if (dk == 0) return one(ring);
    if (dk > best) continue;
    if (dk < best) {
      best = dk;
      xs.clear();
      vals.clear();
    }
    auto scaled = try_divide(gk * gamma.eval(y, yk), gk.coeff_of(x, dk));
    if (!scaled) continue;
    xs.push_back(yk);
    vals.push_back(std::move(*scaled));
    if (static_cast<int>(xs.size()) > bound) {
      MPoly cand = primitive_in(interpolate_in(ring, y, xs, vals), x);
      if (try_divide(a, cand) && try_divide(b, cand)) return cand;
    }
  }
  throw InvariantError("gcd.interpolation", "evaluation/interpolation did not converge");
}

MPoly gcd_core(const MPoly& a, const MPoly& b) {
  const RingPtr& ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const auto va = a.used_vars(), vb = b.used_vars();
  if (va.empty() || vb.empty()) return one(ring);
  for (int v : va)
    if (!contains(vb, v)) return gcd_core(content_in(a, v), b);
  for (int v : vb)
    if (!contains(va, v)) return gcd_core(a, content_in(b, v));
  if (va.size() == 1) {
    const int v = va[0];
    return MPoly::from_upoly(ring, gcd(a.to_upoly(v), b.to_upoly(v)), v).normalized();
  }
  const int x = va.front(), y = va.back();
  const MPoly ca = content_in(a, x), cb = content_in(b, x);
  const MPoly cg = gcd_core(ca, cb);
  const MPoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  return (cg * gcd_primitive(pa, pb, x, y)).normalized();
}

Monomial min_monomial(const MPoly& p) {
  const int n = p.ring()->size();
  std::vector<int> e(n);
  for (int v = 0; v < n; ++v) e[v] = p.min_degree(v);
  return Monomial::from_exponents(e);
}

Monomial monomial_gcd(const Monomial& m1, const Monomial& m2, int n) {
  std::vector<int> e(n);
  for (int v = 0; v < n; ++v) e[v] = std::min(m1.exp(v), m2.exp(v));
  return Monomial::from_exponents(e);
}

void merge_part(std::map<int, MPoly>& acc, const MPoly& f, int mult) {
  if (f.is_constant()) return;
  auto it = acc.find(mult);
  if (it == acc.end())
    acc.emplace(mult, f);
  else
    it->second = it->second * f;
}

void sqf_rec(const MPoly& p, int outer_mult, std::map<int, MPoly>& acc) {
  if (p.is_constant()) return;
  const auto vars = p.used_vars();
  const int x = vars.front();
  const MPoly c = content_in(p, x);
  sqf_rec(c, outer_mult, acc);
  const MPoly f = divide_exact(p, c);
  if (f.degree(x) <= 0) return;
  const MPoly fp = f.diff(x);
  const MPoly g = gcd(f, fp);
  MPoly bpol = divide_exact(f, g);
  MPoly cpol = divide_exact(fp, g);
  MPoly dpol = cpol - bpol.diff(x);
  for (int i = 1; bpol.degree(x) > 0; ++i) {
    const MPoly ai = gcd(bpol, dpol);
    bpol = divide_exact(bpol, ai);
    cpol = divide_exact(dpol, ai);
    dpol = cpol - bpol.diff(x);
    merge_part(acc, ai.normalized(), i * outer_mult);
  }
}

}  // namespace

MPoly content_in(const MPoly& p, int var) {
  if (p.is_zero()) return p;
  auto cs = p.coeffs_in(var);
  MPoly g(p.ring());
  // Start from the sparsest coefficient; stop early once the gcd is 1.
  std::sort(cs.begin(), cs.end(), [](const MPoly& u, const MPoly& v) { return u.size() < v.size(); });
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.normalized() : gcd_core(g, c);
    if (g.is_constant()) return MPoly(p.ring(), Rat(1));
  }
  return g;
}

MPoly primitive_in(const MPoly& p, int var) {
  if (p.is_zero()) return p;
  return divide_exact(p, content_in(p, var)).normalized();
}

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const RingPtr& ring = a.ring() ? a.ring() : b.ring();
  const int n = ring->size();
  const Monomial ma = min_monomial(a), mb = min_monomial(b);
  const Monomial mg = monomial_gcd(ma, mb, n);
  MPoly ar = divide_exact(a, MPoly::monomial(ring, ma));
  MPoly br = divide_exact(b, MPoly::monomial(ring, mb));
  // Homogeneous inputs in three or more variables: dehomogenize.
  if (ar.is_homogeneous() && br.is_homogeneous()) {
    auto va = ar.used_vars(), vb = br.used_vars();
    if (va.size() >= 3 && va == vb) {
      const int h = va.front();
      MPoly g = gcd_core(ar.eval(h, Rat(1)), br.eval(h, Rat(1)));
      g = g.homogenize(h, g.degree());
      return (g * MPoly::monomial(ring, mg)).normalized();
    }
  }
  return (gcd_core(ar, br) * MPoly::monomial(ring, mg)).normalized();
}

MPoly gcd(const std::vector<MPoly>& polys) {
  MPoly g;
  for (const auto& p : polys) {
    g = g.ring() ? gcd(g, p) : p.normalized();
    if (!g.is_zero() && g.is_constant()) return g;
  }
  return g;
}

std::vector<SqfPart> squarefree_decomposition(const MPoly& p) {
  if (p.is_zero()) throw PreconditionError("squarefree.input", "zero polynomial");
  std::map<int, MPoly> acc;
  const RingPtr& ring = p.ring();
  MPoly q = p.normalized();
  // Monomial factors first.
  const Monomial m = min_monomial(q);
  q = divide_exact(q, MPoly::monomial(ring, m));
  for (int v = 0; v < ring->size(); ++v)
    if (m.exp(v) > 0) merge_part(acc, MPoly::variable(ring, v), m.exp(v));
  auto vars = q.used_vars();
  if (q.is_homogeneous() && vars.size() >= 3) {
    const int h = vars.front();
    std::map<int, MPoly> inner;
    sqf_rec(q.eval(h, Rat(1)), 1, inner);
    for (auto& [k, f] : inner) merge_part(acc, f.homogenize(h, f.degree()), k);
  } else {
    sqf_rec(q, 1, acc);
  }
  std::vector<SqfPart> out;
  for (auto& [k, f] : acc) out.push_back({f.normalized(), k});
  return out;
}

MPoly squarefree_part(const MPoly& p) {
  MPoly r(p.ring(), Rat(1));
  for (const auto& part : squarefree_decomposition(p)) r = r * part.factor;
  return r.normalized();
}

}  // namespace scrollrec::algebra
