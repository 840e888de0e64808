#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollrec/algebra/cluster.hpp"
#include "scrollrec/algebra/mpoly.hpp"

namespace scrollrec::curves {

using algebra::AlgCluster;
using algebra::MPoly;

/// Homogeneous form in (x0, x1, x2), stored primitive with positive leading
/// coefficient.
class PlaneCurve {
 public:
  PlaneCurve() = default;
  /// Throws PreconditionError unless F is a nonconstant form in x0, x1, x2.
  explicit PlaneCurve(const MPoly& F);
  static PlaneCurve parse(const std::string& text);

  const MPoly& equation() const { return eq_; }
  int degree() const { return deg_; }
  std::string str() const { return eq_.str(); }
  friend bool operator==(const PlaneCurve& a, const PlaneCurve& b) { return a.eq_ == b.eq_; }

 private:
  MPoly eq_;
  int deg_ = 0;
};

struct SingularityInventory {
  std::vector<AlgCluster> nodes;  // irreducible clusters, canonical form
  std::vector<AlgCluster> cusps;
  int node_count = 0;
  int cusp_count = 0;
};

/// Nodes and cusps of a reduced plane curve, as Galois clusters in canonical
/// form. Throws GoodnessError when a singularity is neither a node nor a
/// cusp (after resampling the projection a bounded number of times).
SingularityInventory singular_inventory(const PlaneCurve& C, std::uint64_t seed = 1);

struct Intersection {
  AlgCluster points;  // irreducible, canonical form
  int multiplicity;
};

/// C ∩ D with intersection multiplicities. The Bézout total is audited.
/// Throws PreconditionError when C and D share a component.
std::vector<Intersection> intersect(const PlaneCurve& C, const PlaneCurve& D, std::uint64_t seed = 1);

/// Clusters where both curves are smooth and meet transversally.
std::vector<AlgCluster> transversal_filter(const PlaneCurve& C, const PlaneCurve& D,
                                           const std::vector<Intersection>& clusters);

/// Classification of a singular point cluster (irreducible): 2 for a node,
/// 3 for a cusp, 0 when smooth, -1 for anything worse.
int classify_point(const PlaneCurve& C, const AlgCluster& p);

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail);
  std::string str() const;
};

/// Degree and Plücker identities of a proper silhouette of a degree-d ruled
/// surface: n = 2d-2, δ+κ = (n-1)(n-2)/2, κ = 3(n-2)/2, n(n-1)-2δ-3κ = d.
Report plucker_audit(int n, int delta, int kappa, int d);
Report plucker_audit(const PlaneCurve& B, int d, std::uint64_t seed = 1);

}  // namespace scrollrec::curves
