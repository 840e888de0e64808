#pragma once

#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/algebra/upoly.hpp"

namespace scrollrec::algebra {

/// Branch of the affine curve C(x, y) = 0 through the smooth point
/// (px, py), written as y = py + a1 h + ... + an h^n with h = x - px, such
/// that C(px + h, y(h)) = 0 mod h^(n+1). Requires dC/dy(P) != 0; throws
/// PreconditionError when P is not on C, is singular, or the tangent is
/// vertical in this chart.
UPoly series_branch(const MPoly& C, int xvar, int yvar, const Rat& px, const Rat& py, int order);

}  // namespace scrollrec::algebra
