#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scrollrec/algebra/cluster.hpp"
#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/curves/curves.hpp"
#include "scrollrec/scroll/scroll.hpp"

namespace scrollrec::lift3d {

using algebra::AlgCluster;
using algebra::MPoly;
using algebra::Rat;
using algebra::UPoly;
using curves::PlaneCurve;
using scroll::ScrollMap;

/// A scroll map to P^3 whose four components are linearly independent.
struct SurfaceParam {
  ScrollMap scroll;

  SurfaceParam() = default;
  explicit SurfaceParam(ScrollMap sp);
  std::string str() const { return scroll.str(); }
};

/// Bidegree (degree in s, degree in t) of a polynomial in the ring (s, t).
std::pair<int, int> bidegree(const MPoly& f);
/// Bidegree of the preimage of the double curve for a map of type (d1, d2).
std::pair<int, int> double_curve_bidegree(int d1, int d2);

struct Pullback {
  MPoly h;  // W(F0, F1, F2)
  MPoly H;  // the factor of h of the double-curve bidegree
};

/// h = W(F0, F1, F2) and its unique irreducible factor of the prescribed
/// bidegree. When `factors` is nonempty it replaces the built-in
/// factorization of h (each entry must divide h).
Pullback pullback_singular_image(const ScrollMap& r, const PlaneCurve& W, const std::vector<MPoly>& factors = {},
                                 std::uint64_t seed = 1);

/// The mate (U, V) of the point (s, t) of H, as rational functions in (s, t)
/// valid on H.
struct RationalFunction {
  MPoly num, den;
};
struct MatePair {
  RationalFunction U, V;
};

/// Symbolic mates: gcd over the function field of H of the polynomial whose
/// roots are the lines through r(s, t) and the restriction of H to those
/// lines. Certified by H(U, V) = 0 and the collapse relations modulo H.
/// Throws RetryError when the gcd is not linear.
MatePair mate_functions(const ScrollMap& r, const MPoly& H);

/// Reduction of f modulo H(s, t) by pseudo-division in s.
MPoly reduce_mod(const MPoly& f, const MPoly& H);

/// The mate of one point (over the field Q[u]/(m)), or nullopt when the
/// point has no unique mate.
std::optional<std::pair<UPoly, UPoly>> pointwise_mate(const ScrollMap& r, const MPoly& H, const UPoly& m,
                                                      const UPoly& s, const UPoly& t);

/// Fourth component from symbolic mates: solves F0(U,V) F3(s,t) - F3(U,V) F0(s,t) = 0
/// (and the same with F1, F2) modulo H. The solution space must be 4-dimensional.
SurfaceParam collapse_mates(const ScrollMap& r, const MPoly& H, const MatePair& mates);

/// Same system assembled from mates at sampled points of H until the rank
/// stabilizes.
SurfaceParam collapse_mates_pointwise(const ScrollMap& r, const MPoly& H, std::uint64_t seed = 1);

/// Preimage (s*, t*) of a pinch image, over the cluster's field; nullopt when
/// not unique.
std::optional<std::pair<UPoly, UPoly>> pinch_preimage(const ScrollMap& r, const AlgCluster& X);

struct PinchOptions {
  int count = -1;  // expected number of pinch points; default 2(d-2)
  int jobs = 1;
};

/// Fourth component from the condition that F3 collapses the tangent of the
/// double curve at every pinch preimage. Candidates are irreducible
/// clusters; Galois-stable subsets of total degree `count` are tried in a
/// fixed order (fewest clusters first) until the kernel is 4-dimensional.
SurfaceParam use_pinch_points(const ScrollMap& r, const Pullback& pb, const std::vector<AlgCluster>& candidates,
                              const PinchOptions& opts = {});

enum class Strategy { mates, pinch };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct Options {
  Strategy strategy = Strategy::mates;
  int pinch_count = -1;
  std::vector<AlgCluster> pinch_images;  // empty: use all transversal points of B and W
  std::vector<MPoly> prefactored;        // optional factors of h
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Scroll reconstruction from (B, P), then the lift by the chosen strategy.
SurfaceParam reconstruct_rat_ruled_surface(const PlaneCurve& B, const PlaneCurve& W, const std::vector<Rat>& P,
                                           const Options& opts = {});

}  // namespace scrollrec::lift3d
