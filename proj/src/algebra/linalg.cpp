#include "scrollrec/algebra/linalg.hpp"

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

// Fraction-free (Bareiss) row echelon form of an integer matrix. Returns the
// pivot columns; A is overwritten with the echelon rows first.
std::vector<int> bareiss(std::vector<std::vector<Int>>& A, int cols) {
  std::vector<int> pivots;
  const int m = static_cast<int>(A.size());
  Int prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < m; ++c) {
    int p = r;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[r]);
    for (int i = r + 1; i < m; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        Int v = A[r][c] * A[i][j] - A[i][c] * A[r][j];
        mpz_divexact(A[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      A[i][c] = 0;
    }
    prev = A[r][c];
    pivots.push_back(c);
    ++r;
  }
  A.resize(r);
  return pivots;
}

std::vector<std::vector<Int>> integer_rows(const Mat& M, int cols) {
  std::vector<std::vector<Int>> A;
  A.reserve(M.size());
  for (const auto& row : M) {
    if (static_cast<int>(row.size()) != cols) throw PreconditionError("linalg.shape", "row length mismatch");
    const Int den = common_denominator(row);
    std::vector<Int> r(cols);
    bool nonzero = false;
    for (int j = 0; j < cols; ++j) {
      Rat v = row[j] * den;
      r[j] = v.get_num();
      nonzero = nonzero || r[j] != 0;
    }
    if (nonzero) A.push_back(std::move(r));
  }
  return A;
}

}  // namespace

std::vector<Vec> nullspace(const Mat& M, int cols) {
  auto A = integer_rows(M, cols);
  const std::vector<int> piv = bareiss(A, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(cols, Rat(0));
    x[f] = 1;
    for (int k = static_cast<int>(piv.size()) - 1; k >= 0; --k) {
      const int pc = piv[k];
      Rat acc = 0;
      for (int j = pc + 1; j < cols; ++j)
        if (x[j] != 0 && A[k][j] != 0) acc += Rat(A[k][j]) * x[j];
      x[pc] = -acc / Rat(A[k][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

int rank(const Mat& M, int cols) {
  auto A = integer_rows(M, cols);
  return static_cast<int>(bareiss(A, cols).size());
}

std::optional<Vec> solve(const Mat& A, const Vec& b, int cols) {
  Mat aug = A;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(-b[i]);
  for (auto& v : nullspace(aug, cols + 1)) {
    if (v[cols] == 0) continue;
    v.pop_back();
    return v;
  }
  return std::nullopt;
}

Mat expand_over_basis(const std::vector<std::vector<UPoly>>& rows, const UPoly& m) {
  const int n = m.degree();
  Mat out;
  for (const auto& row : rows) {
    std::vector<Vec> block(n, Vec(row.size(), Rat(0)));
    for (std::size_t j = 0; j < row.size(); ++j) {
      const UPoly r = row[j].degree() < n ? row[j] : row[j] % m;
      for (int i = 0; i <= r.degree(); ++i) block[i][j] = r.coeff(i);
    }
    for (auto& b : block) out.push_back(std::move(b));
  }
  return out;
}

std::vector<Vec> nullspace_ext(const std::vector<std::vector<UPoly>>& rows, const UPoly& m, int cols) {
  if (m.degree() < 1) throw PreconditionError("linalg.minpoly", "modulus must be non-constant");
  if (gcd(m, m.derivative()).degree() != 0) throw PreconditionError("linalg.minpoly", "modulus is not squarefree");
  return nullspace(expand_over_basis(rows, m), cols);
}

bool RowSpace::add(const Vec& row) {
  Vec v = row;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rat c = v[pivots_[k]];
    if (c == 0) continue;
    for (int j = 0; j < cols_; ++j)
      if (rows_[k][j] != 0) v[j] -= c * rows_[k][j];
  }
  int p = -1;
  for (int j = 0; j < cols_; ++j)
    if (v[j] != 0) {
      p = j;
      break;
    }
  if (p < 0) return false;
  const Rat inv = 1 / v[p];
  for (auto& x : v) x *= inv;
  for (auto& r : rows_) {
    const Rat c = r[p];
    if (c == 0) continue;
    for (int j = 0; j < cols_; ++j)
      if (v[j] != 0) r[j] -= c * v[j];
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, p);
  return true;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rat determinant(Mat M) {
  const int n = static_cast<int>(M.size());
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (M[r][c] == 0) continue;
      const Rat f = M[r][c] / M[c][c];
      for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return det;
}

Mat inverse(const Mat& M) {
  const int n = static_cast<int>(M.size());
  Mat A = M;
  Mat B = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw PreconditionError("linalg.inverse", "matrix is singular");
    std::swap(A[p], A[c]);
    std::swap(B[p], B[c]);
    const Rat inv = 1 / A[c][c];
    for (int k = 0; k < n; ++k) {
      A[c][k] *= inv;
      B[c][k] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      const Rat f = A[r][c];
      for (int k = 0; k < n; ++k) {
        A[r][k] -= f * A[c][k];
        B[r][k] -= f * B[c][k];
      }
    }
  }
  return B;
}

Mat multiply(const Mat& A, const Mat& B) {
  const std::size_t n = A.size(), m = B.empty() ? 0 : B[0].size();
  Mat C(n, Vec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < B.size(); ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

Vec mul_vec(const Mat& A, const Vec& x) {
  Vec y(A.size(), Rat(0));
  for (std::size_t i = 0; i < A.size(); ++i) y[i] = dot(A[i], x);
  return y;
}

Mat identity(int n) {
  Mat I(n, Vec(n, Rat(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

}  // namespace scrollrec::algebra
