#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/algebra/upoly.hpp"
#include "scrollrec/curves/curves.hpp"
#include "scrollrec/param/param.hpp"

namespace scrollrec::scroll {

using algebra::MPoly;
using algebra::Rat;
using algebra::UPoly;
using curves::PlaneCurve;

/// The map (s, t) -> q2(t) + s q1(t) into P^2 or P^3.
class ScrollMap {
 public:
  ScrollMap() = default;
  /// Validates equal lengths (3 or 4) and that q1(t), q2(t) are independent
  /// for every finite t. Each vector is normalized separately (coprime
  /// integer coefficients, positive leading coefficient).
  ScrollMap(std::vector<UPoly> q1, std::vector<UPoly> q2);

  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int degree() const { return d1_ + d2_; }
  int ambient() const { return static_cast<int>(q1_.size()); }
  const std::vector<UPoly>& q1() const { return q1_; }
  const std::vector<UPoly>& q2() const { return q2_; }
  /// F_i(s, t) = q2_i(t) + s q1_i(t) in the ring (s, t).
  MPoly component(int i) const;
  std::vector<MPoly> components() const;
  /// The first three components as a planar map.
  ScrollMap planar() const;
  /// Appends a fourth component F3 = f23(t) + s f13(t).
  ScrollMap extended(const UPoly& f13, const UPoly& f23) const;
  std::string str() const;
  friend bool operator==(const ScrollMap& a, const ScrollMap& b) { return a.q1_ == b.q1_ && a.q2_ == b.q2_; }

 private:
  std::vector<UPoly> q1_, q2_;
  int d1_ = 0, d2_ = 0;
};

/// Parametrization t -> image of the critical point on the line t of a
/// planar scroll map (gcd of the components removed).
std::vector<UPoly> branch_parametrization(const ScrollMap& r);

/// Implicit equation of a planar curve given by an affine parametrization,
/// as the resultant of two moving lines of a mu-basis.
PlaneCurve implicitize_planar(const std::vector<UPoly>& p);

/// Branch curve of a planar scroll map.
PlaneCurve branch_curve(const ScrollMap& r);

/// Recovers (d1, d2) and r from a proper silhouette B and a smooth rational
/// point on it; the branch curve of the result is verified to equal B.
ScrollMap reconstruct_rational_scroll(const PlaneCurve& B, const std::vector<Rat>& P, std::uint64_t seed = 1);
ScrollMap reconstruct_rational_scroll(const PlaneCurve& B, const curves::SingularityInventory& inv,
                                      const std::vector<Rat>& P, std::uint64_t seed = 1);

/// Degree d of the ruled surface whose proper silhouette has degree n.
int surface_degree_from_silhouette(int n);

}  // namespace scrollrec::scroll
