#include "scrollrec/algebra/resultant.hpp"

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

using Coeffs = std::vector<MPoly>;

int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

void trim(Coeffs& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Coeffs prem(Coeffs a, const Coeffs& b) {
  const int n = deg(b);
  const MPoly& lb = b.back();
  int e = deg(a) - n + 1;
  while (!a.empty() && deg(a) >= n) {
    const int k = deg(a) - n;
    const MPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (int j = 0; j <= n; ++j) a[j + k] -= la * b[j];
    a.pop_back();
    trim(a);
    --e;
  }
  if (e > 0 && !a.empty()) {
    const MPoly f = lb.pow(e);
    for (auto& c : a) c = c * f;
  }
  return a;
}

Coeffs divide_coeffs(const Coeffs& a, const MPoly& d) {
  Coeffs out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(divide_exact(c, d));
  return out;
}

Coeffs split(const MPoly& p, int var) {
  Coeffs c = p.coeffs_in(var);
  trim(c);
  return c;
}

MPoly join(const Coeffs& c, const RingPtr& ring, int var) { return MPoly::from_coeffs(ring, c, var); }

// Brown-Collins subresultant PRS; deg a >= deg b, b nonzero.
std::vector<Coeffs> prs_chain(Coeffs a, Coeffs b, const RingPtr& ring) {
  std::vector<Coeffs> chain{a, b};
  MPoly g(ring, Rat(1)), h(ring, Rat(1));
  while (deg(b) > 0) {
    const int delta = deg(a) - deg(b);
    Coeffs r = prem(a, b);
    if (r.empty()) break;
    a = std::move(b);
    b = divide_coeffs(r, g * h.pow(delta));
    g = a.back();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = divide_exact(g.pow(delta), h.pow(delta - 1));
    chain.push_back(b);
  }
  return chain;
}

}  // namespace

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, int var) {
  Coeffs B = split(b, var);
  if (B.empty()) throw PreconditionError("prem.divisor", "division by zero");
  Coeffs A = split(a, var);
  if (deg(A) < deg(B)) return a;
  return join(prem(std::move(A), B), a.ring() ? a.ring() : b.ring(), var);
}

std::vector<MPoly> subresultant_prs(const MPoly& p, const MPoly& q, int var) {
  RingPtr ring = p.ring() ? p.ring() : q.ring();
  Coeffs a = split(p, var), b = split(q, var);
  if (a.empty() || b.empty()) throw PreconditionError("prs.input", "zero polynomial");
  if (deg(a) < deg(b)) std::swap(a, b);
  std::vector<MPoly> out;
  for (auto& c : prs_chain(std::move(a), std::move(b), ring)) out.push_back(join(c, ring, var));
  return out;
}

MPoly resultant(const MPoly& p, const MPoly& q, int var) {
  RingPtr ring = p.ring() ? p.ring() : q.ring();
  Coeffs a = split(p, var), b = split(q, var);
  if (deg(a) <= 0 && deg(b) <= 0) {
    if (a.empty() || b.empty()) return MPoly(ring);
    throw PreconditionError("resultant.degree", "variable absent from both inputs");
  }
  if (a.empty() || b.empty()) return MPoly(ring);
  int sign = 1;
  if (deg(a) < deg(b)) {
    if ((deg(a) * deg(b)) % 2) sign = -1;
    std::swap(a, b);
  }
  if (deg(b) == 0) {
    MPoly r = b.back().pow(deg(a));
    return sign < 0 ? -r : r;
  }
  MPoly g(ring, Rat(1)), h(ring, Rat(1));
  while (true) {
    const int da = deg(a), db = deg(b);
    const int delta = da - db;
    if ((da % 2) && (db % 2)) sign = -sign;
    Coeffs r = prem(a, b);
    if (r.empty()) return MPoly(ring);
    a = std::move(b);
    b = divide_coeffs(r, g * h.pow(delta));
    g = a.back();
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = divide_exact(g.pow(delta), h.pow(delta - 1));
    if (deg(b) == 0) {
      const int dA = deg(a);
      MPoly res = dA == 1 ? b.back() : divide_exact(b.back().pow(dA), h.pow(dA - 1));
      return sign < 0 ? -res : res;
    }
  }
}

MPoly discriminant(const MPoly& f, int var) {
  const int n = f.degree(var);
  if (n < 2) throw PreconditionError("discriminant.degree", "degree in the variable is below 2");
  MPoly lc = f.coeff_of(var, n);
  MPoly r = divide_exact(resultant(f, f.diff(var), var), lc);
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

std::optional<LinearSubresultant> linear_subresultant(const MPoly& p, const MPoly& q, int var) {
  for (const auto& s : subresultant_prs(p, q, var))
    if (s.degree(var) == 1) return LinearSubresultant{s.coeff_of(var, 1), s.coeff_of(var, 0)};
  return std::nullopt;
}

}  // namespace scrollrec::algebra
