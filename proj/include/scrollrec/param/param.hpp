#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/algebra/upoly.hpp"
#include "scrollrec/curves/curves.hpp"

namespace scrollrec::param {

using algebra::MPoly;
using algebra::UPoly;
using curves::PlaneCurve;
using curves::SingularityInventory;

/// Projective parametrization by forms in (t0, t1) of a common degree with
/// no common factor. The parameter value t corresponds to (t0 : t1) = (t : 1).
class ParamCurve {
 public:
  ParamCurve() = default;
  /// Validates and normalizes: common content removed, integer coefficients,
  /// first nonzero coefficient positive.
  explicit ParamCurve(std::vector<MPoly> components);
  /// From affine polynomials in t, homogenized to their maximal degree.
  static ParamCurve from_affine(const std::vector<UPoly>& components);

  const std::vector<MPoly>& components() const { return c_; }
  const MPoly& operator[](std::size_t i) const { return c_[i]; }
  int degree() const { return deg_; }
  int ambient_dim() const { return static_cast<int>(c_.size()); }
  /// Components at t1 = 1.
  std::vector<UPoly> affine() const;
  /// F(component_0, ..., component_k) as a form in (t0, t1).
  MPoly pullback(const MPoly& F) const;
  std::string str() const;
  friend bool operator==(const ParamCurve& a, const ParamCurve& b) { return a.c_ == b.c_; }

 private:
  std::vector<MPoly> c_;
  int deg_ = 0;
};

/// Pair of syzygies of a planar parametrization. q1 and q2 are vectors of
/// polynomials in the affine parameter t.
struct MuBasis {
  std::vector<UPoly> q1, q2;
  int d1 = 0, d2 = 0;
};

/// Degree-(n-2) forms through every node and cusp; the dimension must be
/// n - 1 (InvariantError otherwise).
std::vector<MPoly> adjoint_basis(const PlaneCurve& C, const SingularityInventory& inv);

/// Rational parametrization of a rational plane curve with only nodes and
/// cusps, from a smooth rational point P. Certified by C(psi) = 0,
/// deg psi = deg C and (G0 : G1)(psi(t)) = (t0 : t1) for the pencil used.
ParamCurve parametrize(const PlaneCurve& C, const std::vector<algebra::Rat>& P, std::uint64_t seed = 1);
ParamCurve parametrize(const PlaneCurve& C, const SingularityInventory& inv, const std::vector<algebra::Rat>& P,
                       std::uint64_t seed = 1);

/// Tangent lines of a planar parametrization: cross product of the two
/// partial derivatives with the common factor removed.
ParamCurve dual_parametrization(const ParamCurve& psi);

/// Minimal-degree generators of the syzygy module {q : M q = 0} of a
/// polynomial matrix (rows of equal length), found degree by degree. The
/// module must have the given rank.
std::vector<std::vector<UPoly>> syzygy_module(const std::vector<std::vector<UPoly>>& M, int rank);

/// mu-basis of a planar parametrization, certified: q1 x q2 = c * p and the
/// degrees add up to deg p.
MuBasis mu_basis(const ParamCurve& p);

/// Cross product of polynomial 3-vectors.
std::vector<UPoly> cross(const std::vector<UPoly>& a, const std::vector<UPoly>& b);

}  // namespace scrollrec::param
