#pragma once

#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/algebra/prng.hpp"

namespace scrollrec::algebra {

/// The fixed variable alphabets of the library.
const RingPtr& plane_ring();   // x0, x1, x2
const RingPtr& space_ring();   // x0, x1, x2, x3
const RingPtr& scroll_ring();  // s, t
const RingPtr& param_ring();   // t0, t1
const RingPtr& line_ring();    // t

/// F(M x): variable i of F is replaced by sum_j M[i][j] * y_j, where y_j is
/// variable j of the target ring.
MPoly substitute_linear(const MPoly& F, const Mat& M, const RingPtr& target);

/// Random invertible n x n integer matrix with entries in [-bound, bound].
Mat random_invertible(Prng& rng, int n, long bound);

}  // namespace scrollrec::algebra
