#pragma once

#include <optional>
#include <vector>

#include "scrollrec/algebra/rat.hpp"
#include "scrollrec/algebra/upoly.hpp"

namespace scrollrec::algebra {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

/// Kernel of M (rows of length cols) by fraction-free elimination. The basis
/// is the reduced-echelon one: each vector has a 1 in its own free column and
/// 0 in every other free column.
std::vector<Vec> nullspace(const Mat& M, int cols);

int rank(const Mat& M, int cols);

/// Some solution of A x = b (the one with all free unknowns zero), or
/// nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& A, const Vec& b, int cols);

/// Rows with entries in Q[u]/(m) acting on rational unknowns, expanded over
/// the power basis into deg(m) rational rows each.
Mat expand_over_basis(const std::vector<std::vector<UPoly>>& rows, const UPoly& m);

/// Kernel (over Q) of a system with coefficients in Q[u]/(m); m must be
/// squarefree.
std::vector<Vec> nullspace_ext(const std::vector<std::vector<UPoly>>& rows, const UPoly& m, int cols);

/// Incrementally maintained row space in reduced echelon form.
class RowSpace {
 public:
  explicit RowSpace(int cols) : cols_(cols) {}
  /// Adds a row; returns true when the rank increased.
  bool add(const Vec& row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const Mat& rows() const { return rows_; }
  std::vector<Vec> kernel() const { return nullspace(rows_, cols_); }

 private:
  int cols_;
  Mat rows_;
  std::vector<int> pivots_;
};

Rat dot(const Vec& a, const Vec& b);

Rat determinant(Mat M);
/// Inverse of a square matrix; throws PreconditionError when singular.
Mat inverse(const Mat& M);
Mat multiply(const Mat& A, const Mat& B);
Vec mul_vec(const Mat& A, const Vec& x);
Mat identity(int n);

}  // namespace scrollrec::algebra
