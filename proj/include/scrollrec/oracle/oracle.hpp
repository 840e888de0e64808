#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scrollrec/algebra/cluster.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/curves/curves.hpp"
#include "scrollrec/param/param.hpp"
#include "scrollrec/scroll/scroll.hpp"

namespace scrollrec::oracle {

using algebra::AlgCluster;
using algebra::Mat;
using algebra::MPoly;
using algebra::Rat;
using curves::PlaneCurve;
using curves::Report;
using param::ParamCurve;
using scroll::ScrollMap;

/// Tangent developable of the rational normal curve of degree d composed
/// with M (4 x (d+1)): q2 = M (1, t, ..., t^d), q1 = M (0, 1, 2t, ..., d t^(d-1)).
ScrollMap td_parametrization(int d, const Mat& M);
/// The space curve M (t1^d, t0 t1^(d-1), ..., t0^d).
ParamCurve td_curve(int d, const Mat& M);
/// Tangent developable of a space curve given by four forms.
ScrollMap tangent_scroll(const ParamCurve& H);

/// Projection of the scroll (1 : t : ... : t^d2 : s : ... : s t^d1) by M
/// (4 x (d1+d2+2)).
ScrollMap scroll_parametrization(int d1, int d2, const Mat& M);

/// Implicit equation in (x0, ..., x3) of the surface swept by the lines
/// q2(t) + s q1(t): resultant of the two moving planes of a mu-basis.
MPoly implicitize(const ScrollMap& sp);

/// F(x0, x1, x2, a x3 + b) without an x3^(n-1) term and with a rescaled x3.
/// The discriminant in x3 changes only by a constant factor.
MPoly fiber_normal_form(const MPoly& F);

/// Parts of the discriminant of F with respect to x3 (projection from
/// (0:0:0:1) to the first three coordinates), by multiplicity. Missing parts
/// are the constant 1. Throws GoodnessError for a part of multiplicity >= 4
/// and PreconditionError when the center lies on the surface.
struct DiscriminantSplit {
  MPoly discriminant;
  MPoly mult1, mult2, mult3;
};
DiscriminantSplit discriminant_split(const MPoly& F);

enum class Kind { ruled, developable };
std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

struct Scene {
  Kind kind = Kind::ruled;
  int d = 0, d1 = 0, d2 = 0;
  std::uint64_t seed = 0;
  Mat projection;                 // 4 x (d1+d2+2) or 4 x (d+1)
  ScrollMap surface;              // ambient 4
  std::optional<ParamCurve> curve;  // developables: the cuspidal space curve
  MPoly equation;                 // implicit equation of the surface
  // Silhouette components: B, W for ruled scenes; C, D and the product of
  // the inflection lines for developables.
  std::optional<PlaneCurve> B, W, C, D, lines;
  std::vector<Rat> smooth_point;  // on B (ruled) or C (developable)
  std::vector<AlgCluster> pinch_images;
  std::vector<MPoly> prefactored;  // optional factors of the pullback h
  std::vector<std::string> problems;  // stages that failed while assembling
};

/// Builds a scene from an explicit projection without any accept test;
/// stages that fail are recorded in Scene::problems.
Scene assemble_ruled(int d1, int d2, const Mat& M, std::uint64_t seed = 0);
Scene assemble_developable(int d, const Mat& M, std::uint64_t seed = 0);

/// Random good scenes: projections with small integer entries are drawn
/// until genericity_audit passes (at most max_attempts draws).
Scene generate_ruled(int d1, int d2, std::uint64_t seed, int max_attempts = 32);
Scene generate_developable(int d, std::uint64_t seed, int max_attempts = 32);

Report genericity_audit(const Scene& scene);

/// Recomputes the silhouette of a reconstructed surface and compares it with
/// the scene.
Report verify_reconstruction(const Scene& scene, const ScrollMap& surface);
Report verify_reconstruction(const Scene& scene, const ParamCurve& curve);

/// Images of the pinch points of a ruled surface in P^3 under the projection
/// to the first three coordinates (one cluster per Galois orbit).
std::vector<AlgCluster> ruled_pinch_images(const ScrollMap& surface);
/// Images in P^2 of the special points of a space curve.
std::vector<AlgCluster> special_point_images(const ParamCurve& H);
/// Rational point on the branch curve of a planar scroll map.
std::vector<Rat> branch_point(const ScrollMap& r, const PlaneCurve& B);

}  // namespace scrollrec::oracle
