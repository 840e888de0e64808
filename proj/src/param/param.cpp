#include "scrollrec/param/param.hpp"

#include <functional>
#include <sstream>

#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/algebra/series.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::param {

using namespace algebra;

namespace {

// Scales a list of polynomials by one rational so that all coefficients are
// coprime integers and the leading coefficient of the first nonzero entry
// is positive.
void normalize_vector(std::vector<MPoly>& v) {
  std::vector<Rat> all;
  for (const auto& p : v)
    for (const auto& t : p.terms()) all.push_back(t.coeff);
  const Rat c = content_of(all);
  if (c == 0) return;
  Rat scale = 1 / c;
  for (const auto& p : v)
    if (!p.is_zero()) {
      if (p.lc() < 0) scale = -scale;
      break;
    }
  for (auto& p : v) p *= scale;
}

void normalize_vector(std::vector<UPoly>& v) {
  std::vector<Rat> all;
  int deg = -1;
  for (const auto& p : v) {
    deg = std::max(deg, p.degree());
    for (const auto& x : p.coeffs()) all.push_back(x);
  }
  const Rat c = content_of(all);
  if (c == 0) return;
  Rat scale = 1 / c;
  for (const auto& p : v)
    if (p.degree() == deg) {
      if (p.lc() < 0) scale = -scale;
      break;
    }
  for (auto& p : v) p *= scale;
}

MPoly homogenize_t(const UPoly& p, int deg) {
  const auto& R = param_ring();
  std::vector<Term> terms;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) terms.push_back({Monomial::from_exponents({i, deg - i}), p.coeff(i)});
  return MPoly(R, std::move(terms));
}

std::vector<MPoly> forms_of_degree(const RingPtr& R, int deg) {
  std::vector<MPoly> out;
  const int n = R->size();
  std::vector<int> e(n, 0);
  // Enumerate exponent vectors of total degree deg in descending grlex order.
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n - 1) {
      e[var] = left;
      out.push_back(MPoly::monomial(R, Monomial::from_exponents(e)));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      rec(var + 1, left - k);
    }
  };
  rec(0, deg);
  return out;
}

// p(x(h), y(h)) mod h^order for p in two ring variables.
UPoly pullback_series(const MPoly& p, int xvar, int yvar, const UPoly& X, const UPoly& Y, int order) {
  std::vector<UPoly> xp{UPoly(Rat(1))}, yp{UPoly(Rat(1))};
  UPoly acc;
  for (const auto& t : p.terms()) {
    const int a = t.mono.exp(xvar), b = t.mono.exp(yvar);
    while (static_cast<int>(xp.size()) <= a) xp.push_back((xp.back() * X).truncate(order));
    while (static_cast<int>(yp.size()) <= b) yp.push_back((yp.back() * Y).truncate(order));
    acc += ((xp[a] * yp[b]).truncate(order)) * t.coeff;
  }
  return acc;
}

std::vector<Rat> affine_point(const std::vector<Rat>& P, int i) {
  std::vector<Rat> q;
  for (const auto& x : P) q.push_back(x / P[i]);
  return q;
}

// The pencil of adjoints meeting the branch of C at P to order n-3.
std::pair<MPoly, MPoly> adjoint_pencil(const PlaneCurve& C, const std::vector<MPoly>& adj, const std::vector<Rat>& P) {
  const int n = C.degree();
  const int order = n - 3;
  if (order == 0) {
    if (adj.size() != 2) throw InvariantError("param.pencil", "pencil dimension " + std::to_string(adj.size()));
    return {adj[0], adj[1]};
  }
  int i = 0;
  while (P[i] == 0) ++i;
  const auto q = affine_point(P, i);
  const MPoly f = C.equation().eval(i, 1);
  std::vector<int> others;
  for (int v = 0; v < 3; ++v)
    if (v != i) others.push_back(v);
  int xv = others[0], yv = others[1];
  if (f.diff(yv).evaluate(q) == 0) std::swap(xv, yv);
  const UPoly Y = series_branch(f, xv, yv, q[xv], q[yv], order);
  const UPoly X = UPoly({q[xv], Rat(1)});
  Mat rows(order, Vec(adj.size(), Rat(0)));
  for (std::size_t k = 0; k < adj.size(); ++k) {
    const UPoly s = pullback_series(adj[k].eval(i, 1), xv, yv, X, Y, order);
    for (int e = 0; e < order; ++e) rows[e][k] = s.coeff(e);
  }
  const auto ker = nullspace(rows, static_cast<int>(adj.size()));
  if (ker.size() != 2) throw InvariantError("param.pencil", "pencil dimension " + std::to_string(ker.size()) + " != 2");
  std::vector<MPoly> G;
  for (const auto& v : ker) {
    MPoly g(plane_ring());
    for (std::size_t k = 0; k < adj.size(); ++k)
      if (v[k] != 0) g += adj[k] * v[k];
    G.push_back(g);
  }
  return {G[0], G[1]};
}

// Moving factor a(t) x - b(t) of the elimination resultant.
std::optional<std::pair<UPoly, UPoly>> moving_factor(const MPoly& R, int xvar, int tvar) {
  MPoly p = primitive_in(R, tvar);
  p = primitive_in(p, xvar);
  if (p.degree(xvar) != 1) return std::nullopt;
  const UPoly a = p.coeff_of(xvar, 1).to_upoly(tvar);
  const UPoly b = -p.coeff_of(xvar, 0).to_upoly(tvar);
  return std::make_pair(a, b);
}

ParamCurve parametrize_line(const PlaneCurve& C) {
  Vec l(3);
  for (int i = 0; i < 3; ++i) l[i] = C.equation().diff(i).constant_value();
  auto ker = nullspace({l}, 3);
  std::vector<MPoly> comps;
  const auto& R = param_ring();
  for (int i = 0; i < 3; ++i)
    comps.push_back(MPoly::variable(R, 0) * ker[0][i] + MPoly::variable(R, 1) * ker[1][i]);
  return ParamCurve(comps);
}

}  // namespace

ParamCurve::ParamCurve(std::vector<MPoly> components) {
  if (components.empty()) throw PreconditionError("param.components", "no components");
  deg_ = -1;
  for (auto& c : components) {
    c = c.to_ring(param_ring());
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw PreconditionError("param.homogeneous", "component is not homogeneous");
    if (deg_ >= 0 && c.degree() != deg_) throw PreconditionError("param.degree", "components of different degrees");
    deg_ = c.degree();
  }
  if (deg_ < 0) throw PreconditionError("param.zero", "all components vanish");
  if (gcd(components).degree() > 0) throw PreconditionError("param.gcd", "components share a common factor");
  normalize_vector(components);
  c_ = std::move(components);
}

ParamCurve ParamCurve::from_affine(const std::vector<UPoly>& components) {
  int deg = 0;
  for (const auto& p : components) deg = std::max(deg, p.degree());
  std::vector<MPoly> c;
  for (const auto& p : components) c.push_back(homogenize_t(p, deg));
  return ParamCurve(std::move(c));
}

std::vector<UPoly> ParamCurve::affine() const {
  std::vector<UPoly> out;
  for (const auto& c : c_) out.push_back(c.eval(1, 1).to_upoly(0));
  return out;
}

MPoly ParamCurve::pullback(const MPoly& F) const {
  if (F.ring()->size() != ambient_dim())
    throw PreconditionError("param.pullback", "ambient dimension mismatch");
  return F.compose(c_);
}

std::string ParamCurve::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? " : " : "") + c_[i].str();
  return s;
}

std::vector<MPoly> adjoint_basis(const PlaneCurve& C, const SingularityInventory& inv) {
  const int n = C.degree();
  if (n < 2) throw PreconditionError("adjoint.degree", "curve degree below 2");
  const auto monos = forms_of_degree(plane_ring(), n - 2);
  Mat rows;
  auto impose = [&](const AlgCluster& c) {
    std::vector<std::vector<UPoly>> r(1);
    for (const auto& m : monos) r[0].push_back(evaluate_at(m, c));
    for (auto& row : expand_over_basis(r, c.minpoly)) rows.push_back(std::move(row));
  };
  for (const auto& c : inv.nodes) impose(c);
  for (const auto& c : inv.cusps) impose(c);
  const int cols = static_cast<int>(monos.size());
  const auto ker = rows.empty() ? nullspace(Mat{Vec(cols, Rat(0))}, cols) : nullspace(rows, cols);
  if (static_cast<int>(ker.size()) != n - 1)
    throw InvariantError("adjoint.dimension", "adjoint space has dimension " + std::to_string(ker.size()) +
                                                  ", expected " + std::to_string(n - 1));
  std::vector<MPoly> out;
  for (const auto& v : ker) {
    MPoly a(plane_ring());
    for (int j = 0; j < cols; ++j)
      if (v[j] != 0) a += monos[j] * v[j];
    out.push_back(a.normalized());
  }
  return out;
}

ParamCurve parametrize(const PlaneCurve& C, const std::vector<Rat>& P, std::uint64_t seed) {
  if (C.degree() == 1) return parametrize_line(C);
  return parametrize(C, curves::singular_inventory(C, seed), P, seed);
}

ParamCurve parametrize(const PlaneCurve& C, const SingularityInventory& inv, const std::vector<Rat>& P,
                       std::uint64_t seed) {
  const MPoly& F = C.equation();
  const int n = C.degree();
  if (P.size() != 3 || (P[0] == 0 && P[1] == 0 && P[2] == 0))
    throw PreconditionError("param.point", "point must have three coordinates, not all zero");
  if (F.evaluate(P) != 0) throw PreconditionError("param.point", "point is not on the curve");
  bool smooth = false;
  for (int i = 0; i < 3; ++i) smooth = smooth || F.diff(i).evaluate(P) != 0;
  if (!smooth) throw PreconditionError("param.point", "point is singular on the curve");
  if (n == 1) return parametrize_line(C);

  MPoly G0, G1;
  if (n == 2) {
    // Lines through P.
    auto ker = nullspace({Vec(P.begin(), P.end())}, 3);
    G0 = MPoly(plane_ring());
    G1 = MPoly(plane_ring());
    for (int i = 0; i < 3; ++i) {
      G0 += MPoly::variable(plane_ring(), i) * ker[0][i];
      G1 += MPoly::variable(plane_ring(), i) * ker[1][i];
    }
  } else {
    std::tie(G0, G1) = adjoint_pencil(C, adjoint_basis(C, inv), P);
  }

  const auto R = Ring::make({"x1", "x2", "t"});
  const MPoly tv = MPoly::variable(R, 2);
  Prng rng(seed ^ 0x5eedULL);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Mat M = random_invertible(rng, 3, 3 + attempt);
    const MPoly c = substitute_linear(F, M, plane_ring()).eval(0, 1).to_ring(R);
    if (c.degree(0) != n || c.degree(1) != n || !c.coeff_of(0, n).is_constant() || !c.coeff_of(1, n).is_constant())
      continue;
    const MPoly g0 = substitute_linear(G0, M, plane_ring()).eval(0, 1).to_ring(R);
    const MPoly g1 = substitute_linear(G1, M, plane_ring()).eval(0, 1).to_ring(R);
    const MPoly e = g0 - tv * g1;
    auto fx = moving_factor(resultant(c, e, 1), 0, 2);
    auto fy = moving_factor(resultant(c, e, 0), 1, 2);
    if (!fx || !fy) continue;
    const UPoly L = fx->first * (fy->first / gcd(fx->first, fy->first));
    std::vector<UPoly> chart = {L, fx->second * (L / fx->first), fy->second * (L / fy->first)};
    std::vector<UPoly> affine(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (M[i][j] != 0) affine[i] += chart[j] * M[i][j];
    UPoly g = gcd(gcd(affine[0], affine[1]), affine[2]);
    if (g.degree() > 0)
      for (auto& a : affine) a = a / g;
    ParamCurve psi = ParamCurve::from_affine(affine);
    if (psi.degree() != n) throw InvariantError("param.degree", "parametrization has degree " +
                                                                    std::to_string(psi.degree()) + " != " + std::to_string(n));
    if (!psi.pullback(F).is_zero()) throw InvariantError("param.certificate", "C(psi) does not vanish");
    const MPoly inv_check = psi.pullback(G0) * MPoly::variable(param_ring(), 1) -
                            psi.pullback(G1) * MPoly::variable(param_ring(), 0);
    if (!inv_check.is_zero()) throw InvariantError("param.certificate", "pencil does not invert the parametrization");
    return psi;
  }
  throw InvariantError("param.inversion", "moving factor is not linear for any frame tried");
}

ParamCurve dual_parametrization(const ParamCurve& psi) {
  if (psi.ambient_dim() != 3) throw PreconditionError("dual.ambient", "dual needs a planar parametrization");
  std::vector<MPoly> d0, d1;
  for (const auto& c : psi.components()) {
    d0.push_back(c.diff(0));
    d1.push_back(c.diff(1));
  }
  std::vector<MPoly> x = {d0[1] * d1[2] - d0[2] * d1[1], d0[2] * d1[0] - d0[0] * d1[2], d0[0] * d1[1] - d0[1] * d1[0]};
  const MPoly g = gcd(x);
  if (g.is_zero()) throw PreconditionError("dual.degenerate", "cross product vanishes identically");
  for (auto& c : x) c = divide_exact(c, g);
  if (x[0].degree() <= 0 && x[1].degree() <= 0 && x[2].degree() <= 0)
    throw PreconditionError("dual.degenerate", "dual curve is a point");
  return ParamCurve(x);
}

std::vector<UPoly> cross(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<std::vector<UPoly>> syzygy_module(const std::vector<std::vector<UPoly>>& M, int rank) {
  if (M.empty()) throw PreconditionError("syzygy.shape", "empty matrix");
  const int m = static_cast<int>(M[0].size());
  int bound = 1;
  std::vector<int> row_deg;
  for (const auto& row : M) {
    int d = 0;
    for (const auto& p : row) d = std::max(d, p.degree());
    row_deg.push_back(d);
    bound += d;
  }
  std::vector<std::vector<UPoly>> gens;
  for (int k = 0; k <= bound && static_cast<int>(gens.size()) < rank; ++k) {
    const int cols = m * (k + 1);
    // Unknown (j, e) is the coefficient of t^e in q_j, column j*(k+1)+e.
    Mat A;
    for (std::size_t i = 0; i < M.size(); ++i) {
      for (int deg = 0; deg <= row_deg[i] + k; ++deg) {
        Vec row(cols, Rat(0));
        bool any = false;
        for (int j = 0; j < m; ++j)
          for (int e = 0; e <= k; ++e) {
            const Rat c = M[i][j].coeff(deg - e);
            if (c != 0) {
              row[j * (k + 1) + e] = c;
              any = true;
            }
          }
        if (any) A.push_back(std::move(row));
      }
    }
    const auto ker = A.empty() ? nullspace(Mat{Vec(cols, Rat(0))}, cols) : nullspace(A, cols);
    RowSpace known(cols);
    for (const auto& g : gens) {
      int dg = 0;
      for (const auto& p : g) dg = std::max(dg, p.degree());
      for (int s = 0; s + dg <= k; ++s) {
        Vec v(cols, Rat(0));
        for (int j = 0; j < m; ++j)
          for (int e = 0; e <= g[j].degree(); ++e) v[j * (k + 1) + e + s] = g[j].coeff(e);
        known.add(v);
      }
    }
    for (const auto& v : ker) {
      if (!known.add(v)) continue;
      std::vector<UPoly> q(m);
      for (int j = 0; j < m; ++j) q[j] = UPoly(Vec(v.begin() + j * (k + 1), v.begin() + (j + 1) * (k + 1)));
      normalize_vector(q);
      gens.push_back(std::move(q));
      if (static_cast<int>(gens.size()) == rank) break;
    }
  }
  if (static_cast<int>(gens.size()) != rank) throw InvariantError("syzygy.rank", "syzygy module has unexpected rank");
  return gens;
}

MuBasis mu_basis(const ParamCurve& p) {
  if (p.ambient_dim() != 3) throw PreconditionError("mu_basis.ambient", "mu-basis needs a planar parametrization");
  const auto a = p.affine();
  const auto gens = syzygy_module({a}, 2);
  MuBasis mb;
  mb.q1 = gens[0];
  mb.q2 = gens[1];
  auto deg = [](const std::vector<UPoly>& v) {
    int d = -1;
    for (const auto& x : v) d = std::max(d, x.degree());
    return d;
  };
  mb.d1 = deg(mb.q1);
  mb.d2 = deg(mb.q2);
  if (mb.d1 + mb.d2 != p.degree())
    throw InvariantError("mu_basis.degree", "mu-degrees " + std::to_string(mb.d1) + " + " + std::to_string(mb.d2) +
                                                " != " + std::to_string(p.degree()));
  const auto w = cross(mb.q1, mb.q2);
  // w must be a nonzero constant multiple of the affine parametrization.
  int piv = 0;
  while (a[piv].is_zero()) ++piv;
  if (w[piv].is_zero()) throw InvariantError("mu_basis.wedge", "q1 x q2 vanishes");
  const Rat c = w[piv].lc() / a[piv].lc();
  for (int i = 0; i < 3; ++i)
    if (!(w[i] == a[i] * c)) throw InvariantError("mu_basis.wedge", "q1 x q2 is not proportional to the input");
  return mb;
}

}  // namespace scrollrec::param
