#pragma once

#include <optional>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"

namespace scrollrec::algebra {

/// Subresultant polynomial remainder sequence of p and q in var (p first;
/// the sequence starts with the input of larger degree). Elements are the
/// subresultants up to sign.
std::vector<MPoly> subresultant_prs(const MPoly& p, const MPoly& q, int var);

/// Sylvester resultant with respect to var. Requires positive degree of at
/// least one input in var.
MPoly resultant(const MPoly& p, const MPoly& q, int var);

/// Res(F, dF/dvar) / lc(F) with the classical sign (-1)^(n(n-1)/2), so that
/// disc(x^2 + b x + c) = b^2 - 4c.
MPoly discriminant(const MPoly& f, int var);

/// The degree-one member a*var + b of the subresultant sequence, if the
/// sequence has one. At a common root of p and q where the gcd has degree
/// one, the common root is -b/a.
struct LinearSubresultant {
  MPoly a;
  MPoly b;
};
std::optional<LinearSubresultant> linear_subresultant(const MPoly& p, const MPoly& q, int var);

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b in var.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, int var);

}  // namespace scrollrec::algebra
