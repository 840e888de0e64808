#pragma once

#include <utility>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"

namespace scrollrec::algebra {

/// Greatest common divisor over Q, normalized (integer primitive, positive
/// leading coefficient). gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);
MPoly gcd(const std::vector<MPoly>& polys);

/// Content with respect to var: gcd of the coefficients in var (free of var).
MPoly content_in(const MPoly& p, int var);
/// p / content_in(p, var), normalized.
MPoly primitive_in(const MPoly& p, int var);

struct SqfPart {
  MPoly factor;
  int multiplicity;
};

/// Squarefree decomposition (Yun's algorithm applied recursively through the
/// contents). Factors are normalized, pairwise coprime, squarefree and
/// grouped by multiplicity; their product with multiplicities equals the
/// input up to a rational unit. Constant inputs give an empty list.
std::vector<SqfPart> squarefree_decomposition(const MPoly& p);

/// Product of the distinct irreducible factors (normalized).
MPoly squarefree_part(const MPoly& p);

}  // namespace scrollrec::algebra
