#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scrollrec/algebra/cluster.hpp"
#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/curves/curves.hpp"
#include "scrollrec/param/param.hpp"

namespace scrollrec::tangdev {

using algebra::AlgCluster;
using algebra::MPoly;
using algebra::Rat;
using curves::PlaneCurve;
using param::ParamCurve;

/// Determinant of the 4 x 4 matrix of third partial derivatives of
/// (H0, H1, H2, H3) as a linear form in the coefficients c_k of
/// H3 = sum c_k t0^k t1^(d-k): det = sum c_k A_k.
struct CuspMatrixForm {
  int d = 0;
  std::vector<MPoly> A;  // d + 1 forms in (t0, t1) of degree 4(d-3)

  /// sum c_k A_k for a form H3 of degree d.
  MPoly evaluate(const MPoly& H3) const;
};

/// The third-derivative determinant of four forms of a common degree.
MPoly third_derivative_determinant(const std::vector<MPoly>& H);

CuspMatrixForm cusp_matrix_form(const MPoly& H0, const MPoly& H1, const MPoly& H2);

/// Vanishing orders of a triangularized local parametrization of a space
/// curve at a point of the parameter line, and the resulting multiplicity
/// sum(alpha) - 6.
struct SpecialPointProfile {
  std::vector<int> orders;
  int multiplicity = 0;
};

/// The cluster has one coordinate, the affine parameter t (t1 = 1).
SpecialPointProfile special_point_profile(const ParamCurve& curve, const AlgCluster& cluster);

/// Parameter clusters (one coordinate t) of the special points of a space
/// curve: roots of its third-derivative determinant.
std::vector<AlgCluster> special_parameters(const ParamCurve& curve);

/// Recovers the cuspidal space curve (H0 : H1 : H2 : H3) from the cuspidal
/// image C, the nodal image D (absent for d = 3) and a smooth rational point
/// of C.
ParamCurve reconstruct_tangent_developable(const PlaneCurve& C, const std::optional<PlaneCurve>& D,
                                           const std::vector<Rat>& P, std::uint64_t seed = 1);

}  // namespace scrollrec::tangdev
