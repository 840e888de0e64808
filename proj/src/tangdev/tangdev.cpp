#include "scrollrec/tangdev/tangdev.hpp"

#include <algorithm>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::tangdev {

using namespace algebra;

namespace {

std::string str(int v) { return std::to_string(v); }

// Third partials d^3 f / dt0^a dt1^(3-a), a = 0..3.
std::vector<MPoly> third_partials(const MPoly& f) {
  std::vector<MPoly> out;
  for (int a = 0; a <= 3; ++a) {
    MPoly g = f;
    for (int k = 0; k < a; ++k) g = g.diff(0);
    for (int k = a; k < 3; ++k) g = g.diff(1);
    out.push_back(g);
  }
  return out;
}

MPoly det3(const std::vector<std::vector<MPoly>>& m, int skip) {
  std::vector<int> c;
  for (int j = 0; j < 4; ++j)
    if (j != skip) c.push_back(j);
  auto e = [&](int i, int j) -> const MPoly& { return m[i][c[j]]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

// Cofactors of the last row of the 4 x 4 matrix whose first rows are given.
std::vector<MPoly> last_row_cofactors(const std::vector<std::vector<MPoly>>& rows) {
  std::vector<MPoly> out;
  for (int a = 0; a < 4; ++a) {
    MPoly m = det3(rows, a);
    out.push_back((a % 2 == 0) ? -m : m);  // sign (-1)^(3 + a)
  }
  return out;
}

MPoly monomial_form(int k, int d) { return MPoly::monomial(param_ring(), Monomial::from_exponents({k, d - k})); }

Vec form_coords(const MPoly& f, int d) {
  Vec v(d + 1);
  for (const auto& term : f.terms()) v[term.mono.exp(0)] = term.coeff;
  return v;
}

void check_forms(const std::vector<MPoly>& H) {
  const int d = H.front().degree();
  for (const auto& h : H)
    if (h.is_zero() || !h.is_homogeneous() || h.degree() != d)
      throw PreconditionError("cusp.forms", "forms must be nonzero and homogeneous of a common degree");
  if (d < 3) throw PreconditionError("cusp.degree", "degree must be at least 3");
}

// Taylor coefficients of p(tau + h) in h over K.
std::vector<UPoly> taylor(const Ext& K, const UPoly& p, const UPoly& tau) {
  std::vector<UPoly> c;
  for (const auto& x : p.coeffs()) c.push_back(UPoly(x));
  // Repeated synthetic division by (h - tau) gives the shifted coefficients.
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) c[j] = K.reduce(c[j] + K.mul(tau, c[j + 1]));
  return c;
}

}  // namespace

MPoly CuspMatrixForm::evaluate(const MPoly& H3) const {
  MPoly out(param_ring());
  const Vec c = form_coords(H3.to_ring(param_ring()), d);
  for (int k = 0; k <= d; ++k)
    if (c[k] != 0) out += A[k] * c[k];
  return out;
}

MPoly third_derivative_determinant(const std::vector<MPoly>& H) {
  if (H.size() != 4) throw PreconditionError("cusp.forms", "need four forms");
  check_forms(H);
  std::vector<std::vector<MPoly>> rows;
  for (int i = 0; i < 3; ++i) rows.push_back(third_partials(H[i]));
  const auto cof = last_row_cofactors(rows);
  const auto last = third_partials(H[3]);
  MPoly out(param_ring());
  for (int a = 0; a < 4; ++a) out += last[a] * cof[a];
  return out;
}

CuspMatrixForm cusp_matrix_form(const MPoly& H0, const MPoly& H1, const MPoly& H2) {
  const std::vector<MPoly> H{H0.to_ring(param_ring()), H1.to_ring(param_ring()), H2.to_ring(param_ring())};
  check_forms(H);
  const int d = H0.degree();
  Mat coords;
  for (const auto& h : H) coords.push_back(form_coords(h, d));
  if (rank(coords, d + 1) != 3) throw PreconditionError("cusp.independent", "H0, H1, H2 are linearly dependent");
  std::vector<std::vector<MPoly>> rows;
  for (const auto& h : H) rows.push_back(third_partials(h));
  const auto cof = last_row_cofactors(rows);
  CuspMatrixForm out;
  out.d = d;
  for (int k = 0; k <= d; ++k) {
    const auto e = third_partials(monomial_form(k, d));
    MPoly A(param_ring());
    for (int a = 0; a < 4; ++a) A += e[a] * cof[a];
    out.A.push_back(A);
  }
  // A repeated row gives the zero determinant.
  for (const auto& h : H)
    if (!out.evaluate(h).is_zero()) throw InvariantError("cusp.audit", "determinant form does not vanish on H0..H2");
  return out;
}

SpecialPointProfile special_point_profile(const ParamCurve& curve, const AlgCluster& cluster) {
  if (curve.ambient_dim() != 4) throw PreconditionError("profile.curve", "expected a space curve");
  if (cluster.dim() != 1) throw PreconditionError("profile.cluster", "expected a cluster on the parameter line");
  const Ext K(cluster.minpoly);
  const UPoly tau = K.reduce(cluster.coords[0]);
  const int d = curve.degree();
  std::vector<std::vector<UPoly>> M;
  for (const auto& a : curve.affine()) {
    auto row = taylor(K, a, tau);
    row.resize(d + 1);
    M.push_back(row);
  }
  // Column-by-column elimination: pivot columns are the vanishing orders.
  SpecialPointProfile prof;
  int r = 0;
  for (int col = 0; col <= d && r < 4; ++col) {
    int piv = -1;
    for (int i = r; i < 4; ++i)
      if (!K.is_zero(M[i][col])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    const UPoly inv = K.inv(M[r][col]);
    for (int i = r + 1; i < 4; ++i) {
      if (K.is_zero(M[i][col])) continue;
      const UPoly f = K.mul(M[i][col], inv);
      for (int j = col; j <= d; ++j) M[i][j] = K.reduce(M[i][j] - K.mul(f, M[r][j]));
    }
    prof.orders.push_back(col);
    ++r;
  }
  if (r != 4) throw PreconditionError("profile.degenerate", "curve spans less than P^3");
  prof.multiplicity = prof.orders[0] + prof.orders[1] + prof.orders[2] + prof.orders[3] - 6;
  return prof;
}

std::vector<AlgCluster> special_parameters(const ParamCurve& curve) {
  const MPoly W = third_derivative_determinant(curve.components());
  std::vector<AlgCluster> out;
  if (W.is_zero()) throw PreconditionError("special.degenerate", "third-derivative determinant vanishes");
  for (const auto& [m, mult] : factor(W.eval(1, Rat(1)).to_upoly(0))) out.push_back({m, {UPoly::x() % m}});
  return out;
}

ParamCurve reconstruct_tangent_developable(const PlaneCurve& C, const std::optional<PlaneCurve>& D,
                                           const std::vector<Rat>& P, std::uint64_t seed) {
  const int d = C.degree();
  if (d < 3) throw PreconditionError("tangdev.degree", "cuspidal image must have degree at least 3");
  const int target = 4 * (d - 3);
  if (d > 3 && !D) throw GoodnessError("tangdev.D", "nodal image missing");
  if (D && D->degree() != 2 * (d - 1) * (d - 3))
    throw GoodnessError("tangdev.D_degree",
                        "nodal image has degree " + str(D->degree()) + ", expected " + str(2 * (d - 1) * (d - 3)));
  ParamCurve psi = param::parametrize(C, P, seed);
  // Move every intersection with D to finite parameters.
  UPoly pulled;
  if (D) {
    bool found = false;
    for (int c = 0; c < 16 && !found; ++c) {
      const auto& R = param_ring();
      const ParamCurve moved(
          [&] {
            std::vector<MPoly> comps;
            for (const auto& f : psi.components())
              comps.push_back(f.compose({MPoly::variable(R, 0) + MPoly::variable(R, 1) * Rat(c), MPoly::variable(R, 1)}));
            return comps;
          }());
      const MPoly form = moved.pullback(D->equation());
      if (form.is_zero()) throw GoodnessError("tangdev.D", "C is a component of D");
      if (form.degree(0) != form.degree()) continue;
      psi = moved;
      pulled = form.eval(1, Rat(1)).to_upoly(0);
      found = true;
    }
    if (!found) throw GoodnessError("tangdev.chart", "no chart keeps C and D meeting at finite parameters");
  }
  std::vector<AlgCluster> candidates;
  std::vector<int> degrees;
  if (D)
    for (const auto& [m, mult] : factor(pulled)) {
      if (mult != 1) continue;  // not a transversal intersection
      candidates.push_back({m, {UPoly::x() % m}});
      degrees.push_back(m.degree());
    }
  const auto form = cusp_matrix_form(psi[0], psi[1], psi[2]);
  Mat known;
  for (int i = 0; i < 3; ++i) known.push_back(form_coords(psi[i], d));
  for (const auto& subset : subsets_of_degree(degrees, target)) {
    RowSpace rs(d + 1);
    for (int i : subset) {
      const auto& cl = candidates[i];
      std::vector<UPoly> row;
      for (const auto& A : form.A) row.push_back(evaluate_at(A, AlgCluster{cl.minpoly, {cl.coords[0], UPoly(1)}}));
      for (const auto& r : expand_over_basis({row}, cl.minpoly)) rs.add(r);
    }
    const auto kernel = rs.kernel();
    if (kernel.size() != 4) continue;
    RowSpace span(d + 1);
    for (const auto& k : known) span.add(k);
    for (const auto& c : kernel) {
      if (!span.add(c)) continue;
      MPoly H3(param_ring());
      for (int k = 0; k <= d; ++k)
        if (c[k] != 0) H3 += monomial_form(k, d) * c[k];
      const ParamCurve curve({psi[0], psi[1], psi[2], H3});
      // Acceptance: exactly the chosen clusters are special, each simple
      // with profile (0, 1, 2, 4).
      const MPoly W = form.evaluate(H3);
      if (W.is_zero() || W.degree(0) != target) break;
      const UPoly w = W.eval(1, Rat(1)).to_upoly(0);
      if (gcd(w, w.derivative()).degree() > 0) break;
      bool ok = true;
      for (int i : subset) {
        const auto& cl = candidates[i];
        ok = ok && (w % cl.minpoly).is_zero();
        if (!ok) break;
        const auto prof = special_point_profile(curve, cl);
        ok = prof.orders == std::vector<int>{0, 1, 2, 4};
      }
      if (ok) return curve;
      break;
    }
  }
  throw InvariantError("tangdev.subsets", "no Galois-stable subset of " + str(static_cast<int>(candidates.size())) +
                                              " transversal clusters gives an accepted 4-dimensional solution space");
}

}  // namespace scrollrec::tangdev
