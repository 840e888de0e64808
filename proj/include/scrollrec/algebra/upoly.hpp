#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scrollrec/algebra/rat.hpp"

namespace scrollrec::algebra {

/// Dense univariate polynomial over the rationals; c[i] multiplies x^i.
/// The coefficient vector never carries trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(const Rat& constant);  // NOLINT: constants convert implicitly
  UPoly(long constant) : UPoly(Rat(constant)) {}  // NOLINT

  static UPoly x(int power = 1);
  static UPoly from_ints(const std::vector<long>& coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  const Rat& lc() const { return c_.back(); }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Rat& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rat& s) { return a *= s; }
  friend UPoly operator*(const Rat& s, UPoly a) { return a *= s; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  Rat operator()(const Rat& x) const;
  UPoly derivative() const;
  UPoly pow(unsigned e) const;
  UPoly compose(const UPoly& inner) const;
  /// p(x + a)
  UPoly shift(const Rat& a) const;
  /// x^k * p
  UPoly shift_up(int k) const;
  /// Truncate to terms of degree < n.
  UPoly truncate(int n) const;
  /// x^deg * p(1/x) with the given formal degree.
  UPoly reverse(int deg) const;

  UPoly monic() const;
  /// Integer-coefficient primitive part with positive leading coefficient.
  UPoly primitive() const;
  /// Multiplicity of the root x = 0.
  int valuation() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder over Q.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);  // quotient
UPoly operator%(const UPoly& a, const UPoly& b);  // remainder

/// Monic gcd (zero only when both are zero). Uses a modular algorithm with
/// rational reconstruction by CRT for larger inputs.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd {
  UPoly g, s, t;
};
XGcd xgcd(const UPoly& a, const UPoly& b);

/// Inverse of a modulo m; throws InvariantError when not invertible.
UPoly inverse_mod(const UPoly& a, const UPoly& m);

/// Exact division; throws InvariantError when the remainder is nonzero.
UPoly divide_exact(const UPoly& a, const UPoly& b);

/// Yun squarefree decomposition: list of (factor, multiplicity) with monic
/// factors; the product equals a up to its leading coefficient.
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a);

/// Resultant of two univariate polynomials over Q.
Rat resultant(const UPoly& a, const UPoly& b);

/// Newton interpolation through (x_i, y_i) with distinct x_i.
UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

}  // namespace scrollrec::algebra
