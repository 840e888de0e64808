#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/upoly.hpp"

namespace scrollrec::algebra {

/// A Galois-stable set of algebraic points: a squarefree minimal polynomial
/// m(u) together with one coordinate polynomial per ambient coordinate, each
/// reduced modulo m. Coordinates may be projective (all of them defined up
/// to a common factor) or affine; the cluster does not know which.
struct AlgCluster {
  UPoly minpoly;
  std::vector<UPoly> coords;

  int degree() const { return minpoly.degree(); }
  std::size_t dim() const { return coords.size(); }
  bool is_rational() const { return minpoly.degree() == 1; }
  /// Coordinates of the single point of a degree-one cluster.
  std::vector<Rat> rational_point() const;

  static AlgCluster rational(const std::vector<Rat>& point);
};

/// f evaluated at the cluster point: variable i of f's ring takes coords[i].
/// Result reduced modulo the minimal polynomial.
UPoly evaluate_at(const MPoly& f, const AlgCluster& c);
/// Same, with an explicit variable map (var_of_coord[i] = ring variable that
/// receives coords[i], or -1).
UPoly evaluate_at(const MPoly& f, const AlgCluster& c, const std::vector<int>& var_of_coord);

/// True when f vanishes at every point of the cluster.
bool vanishes_at(const MPoly& f, const AlgCluster& c);

/// Splits a cluster into irreducible ones (factor the minimal polynomial).
std::vector<AlgCluster> irreducible_parts(const AlgCluster& c);

/// Restricts a cluster to the points where g (an element of Q[u]/(m)) is
/// zero, resp. nonzero.
std::optional<AlgCluster> restrict_zero(const AlgCluster& c, const UPoly& g);
std::optional<AlgCluster> restrict_nonzero(const AlgCluster& c, const UPoly& g);

/// Projective normalization: the cluster is split so that in each part the
/// first coordinate not identically zero is invertible, and then scaled to 1.
std::vector<AlgCluster> normalize_projective(const AlgCluster& c);

/// Canonical representation of the point set of an affine cluster (or of a
/// projectively normalized one): the minimal polynomial of a fixed separating
/// linear form and the coordinates as polynomials in it. Two clusters denote
/// the same set of points exactly when their canonical forms are equal.
AlgCluster canonical(const AlgCluster& c);

/// Same set of projective points.
bool same_points(const AlgCluster& a, const AlgCluster& b);

/// Applies a linear map to the coordinates: new_i = sum_j M[i][j] * coords[j].
AlgCluster transform(const AlgCluster& c, const std::vector<std::vector<Rat>>& M);

/// Index subsets of a list of clusters with the given total degree, fewest
/// clusters first and lexicographic within a size. Total zero gives the
/// empty subset.
std::vector<std::vector<int>> subsets_of_degree(const std::vector<int>& degrees, int total);

/// "minpoly ; c0 ; c1 ; ..." with polynomials in u.
std::string str(const AlgCluster& c);

}  // namespace scrollrec::algebra
