#pragma once

#include <vector>

#include "scrollrec/algebra/upoly.hpp"

namespace scrollrec::algebra {

/// Arithmetic in Q[u]/(m). Elements are UPoly reduced modulo m. Inversion
/// requires m irreducible (or at least coprime to the element) and throws
/// InvariantError otherwise.
class Ext {
 public:
  explicit Ext(UPoly minpoly);

  const UPoly& minpoly() const { return m_; }
  int degree() const { return m_.degree(); }

  UPoly reduce(const UPoly& a) const { return a.degree() < m_.degree() ? a : a % m_; }
  UPoly add(const UPoly& a, const UPoly& b) const { return a + b; }
  UPoly sub(const UPoly& a, const UPoly& b) const { return a - b; }
  UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }
  UPoly inv(const UPoly& a) const;
  UPoly div(const UPoly& a, const UPoly& b) const { return mul(a, inv(b)); }
  UPoly pow(const UPoly& a, unsigned e) const;
  bool is_zero(const UPoly& a) const { return reduce(a).is_zero(); }

  /// Coordinates of a in the power basis 1, u, ..., u^(deg m - 1).
  std::vector<Rat> coords(const UPoly& a) const;

 private:
  UPoly m_;
};

/// Polynomial in one variable over an Ext: c[i] multiplies v^i.
using KPoly = std::vector<UPoly>;

namespace kpoly {

void trim(const Ext& K, KPoly& a);
int degree(const KPoly& a);
KPoly add(const Ext& K, const KPoly& a, const KPoly& b);
KPoly sub(const Ext& K, const KPoly& a, const KPoly& b);
KPoly mul(const Ext& K, const KPoly& a, const KPoly& b);
KPoly scale(const Ext& K, const KPoly& a, const UPoly& s);
std::pair<KPoly, KPoly> divmod(const Ext& K, const KPoly& a, const KPoly& b);
KPoly monic(const Ext& K, const KPoly& a);
/// Monic gcd.
KPoly gcd(const Ext& K, KPoly a, KPoly b);
KPoly derivative(const Ext& K, const KPoly& a);
UPoly eval(const Ext& K, const KPoly& a, const UPoly& x);
/// Rational polynomial viewed over K.
KPoly from_upoly(const UPoly& p);

}  // namespace kpoly

/// Kernel basis (reduced echelon, free unknowns set to 1) of a matrix over
/// the field K; rows have `cols` entries.
std::vector<std::vector<UPoly>> kernel_over(const Ext& K, std::vector<std::vector<UPoly>> M, int cols);

}  // namespace scrollrec::algebra
