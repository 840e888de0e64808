#include "scrollrec/algebra/series.hpp"

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

// Coefficients of C(px + h, py + Y) as a polynomial in Y whose coefficients
// are univariate in h.
std::vector<UPoly> shifted_coeffs(const MPoly& C, int xvar, int yvar, const Rat& px, const Rat& py) {
  const int dy = C.degree(yvar);
  std::vector<UPoly> in_x(dy + 1);
  for (const auto& t : C.terms()) {
    for (int v = 0; v < C.ring()->size(); ++v)
      if (v != xvar && v != yvar && t.mono.exp(v) != 0)
        throw PreconditionError("series.vars", "curve uses variables other than the chart coordinates");
    std::vector<Rat> c(t.mono.exp(xvar) + 1, Rat(0));
    c.back() = t.coeff;
    in_x[t.mono.exp(yvar)] += UPoly(std::move(c));
  }
  for (auto& p : in_x) p = p.shift(px);
  // Taylor shift in Y by py.
  std::vector<UPoly> out(dy + 1);
  for (int k = dy; k >= 0; --k) {
    // out := out * (Y + py) + in_x[k]
    std::vector<UPoly> next(dy + 1);
    for (int j = 0; j <= dy; ++j) {
      if (out[j].is_zero()) continue;
      if (j + 1 <= dy) next[j + 1] += out[j];
      next[j] += out[j] * py;
    }
    next[0] += in_x[k];
    out = std::move(next);
  }
  return out;
}

}  // namespace

UPoly series_branch(const MPoly& C, int xvar, int yvar, const Rat& px, const Rat& py, int order) {
  const auto cy = shifted_coeffs(C, xvar, yvar, px, py);
  if (cy[0].coeff(0) != 0) throw PreconditionError("series.point", "point is not on the curve");
  const Rat slope_den = cy.size() > 1 ? cy[1].coeff(0) : Rat(0);
  if (slope_den == 0) {
    if (cy[0].coeff(1) != 0) throw PreconditionError("series.chart", "vertical tangent in the chosen chart");
    throw PreconditionError("series.smooth", "point is singular on the curve");
  }
  // Y(h) with Y(0) = 0, solved term by term from the linear part.
  UPoly Y;
  for (int i = 1; i <= order; ++i) {
    // value = sum_k cy[k] * Y^k mod h^(i+1)
    UPoly value, power(Rat(1));
    for (std::size_t k = 0; k < cy.size(); ++k) {
      if (k > 0) power = (power * Y).truncate(i + 1);
      value += (cy[k] * power).truncate(i + 1);
    }
    const Rat a = -value.coeff(i) / slope_den;
    Y += UPoly::x(i) * a;
  }
  return Y + UPoly(py);
}

}  // namespace scrollrec::algebra
