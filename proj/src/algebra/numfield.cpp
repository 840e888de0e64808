#include "scrollrec/algebra/numfield.hpp"

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

Ext::Ext(UPoly minpoly) : m_(std::move(minpoly)) {
  if (m_.degree() < 1) throw PreconditionError("ext.minpoly", "minimal polynomial must be non-constant");
  m_ = m_.monic();
}

UPoly Ext::inv(const UPoly& a) const {
  if (m_.degree() == 1) {
    const Rat v = reduce(a).coeff(0);
    if (v == 0) throw InvariantError("ext.inverse", "zero has no inverse");
    return UPoly(Rat(1 / v));
  }
  return inverse_mod(a, m_);
}

UPoly Ext::pow(const UPoly& a, unsigned e) const {
  UPoly r(Rat(1)), b = reduce(a);
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

std::vector<Rat> Ext::coords(const UPoly& a) const {
  const UPoly r = reduce(a);
  std::vector<Rat> out(m_.degree(), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) out[i] = r.coeff(i);
  return out;
}

namespace kpoly {

void trim(const Ext& K, KPoly& a) {
  for (auto& c : a) c = K.reduce(c);
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int degree(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

KPoly add(const Ext& K, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(K, r);
  return r;
}

KPoly sub(const Ext& K, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(K, r);
  return r;
}

KPoly mul(const Ext& K, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(K, r);
  return r;
}

KPoly scale(const Ext& K, const KPoly& a, const UPoly& s) {
  KPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = K.mul(a[i], s);
  trim(K, r);
  return r;
}

std::pair<KPoly, KPoly> divmod(const Ext& K, const KPoly& a, const KPoly& b) {
  if (b.empty()) throw PreconditionError("kpoly.divmod", "division by zero");
  if (a.size() < b.size()) return {{}, a};
  KPoly r = a;
  const int db = degree(b);
  KPoly q(a.size() - b.size() + 1);
  const UPoly inv = K.inv(b.back());
  for (int k = degree(a) - db; k >= 0; --k) {
    const UPoly c = K.mul(r[k + db], inv);
    q[k] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = K.reduce(r[k + j] - c * b[j]);
  }
  r.resize(db);
  trim(K, r);
  trim(K, q);
  return {q, r};
}

KPoly monic(const Ext& K, const KPoly& a) {
  if (a.empty()) return a;
  return scale(K, a, K.inv(a.back()));
}

KPoly gcd(const Ext& K, KPoly a, KPoly b) {
  trim(K, a);
  trim(K, b);
  while (!b.empty()) {
    KPoly r = divmod(K, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(K, a);
}

KPoly derivative(const Ext& K, const KPoly& a) {
  if (a.size() <= 1) return {};
  KPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
  trim(K, r);
  return r;
}

UPoly eval(const Ext& K, const KPoly& a, const UPoly& x) {
  UPoly acc;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = K.reduce(K.mul(acc, x) + *it);
  return acc;
}

KPoly from_upoly(const UPoly& p) {
  KPoly r;
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

}  // namespace kpoly

std::vector<std::vector<UPoly>> kernel_over(const Ext& K, std::vector<std::vector<UPoly>> M, int cols) {
  for (auto& row : M)
    for (auto& x : row) x = K.reduce(x);
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c].is_zero()) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[r]);
    const UPoly inv = K.inv(M[r][c]);
    for (auto& x : M[r]) x = K.mul(x, inv);
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      const UPoly f = M[i][c];
      for (int k = 0; k < cols; ++k)
        if (!M[r][k].is_zero()) M[i][k] = K.reduce(M[i][k] - f * M[r][k]);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<UPoly>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<UPoly> v(cols);
    v[f] = UPoly(Rat(1));
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -M[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace scrollrec::algebra
