#include "scrollrec/scroll/scroll.hpp"

#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::scroll {

using namespace algebra;

namespace {

int max_degree(const std::vector<UPoly>& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

void normalize(std::vector<UPoly>& v) {
  std::vector<Rat> all;
  const int deg = max_degree(v);
  for (const auto& p : v)
    for (const auto& x : p.coeffs()) all.push_back(x);
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

UPoly det3(const std::vector<UPoly>& a, const std::vector<UPoly>& b, const std::vector<UPoly>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::vector<UPoly> derivative(const std::vector<UPoly>& v) {
  std::vector<UPoly> out;
  for (const auto& p : v) out.push_back(p.derivative());
  return out;
}

}  // namespace

ScrollMap::ScrollMap(std::vector<UPoly> q1, std::vector<UPoly> q2) : q1_(std::move(q1)), q2_(std::move(q2)) {
  if (q1_.size() != q2_.size() || (q1_.size() != 3 && q1_.size() != 4))
    throw PreconditionError("scroll.shape", "q1 and q2 must both have 3 or 4 components");
  normalize(q1_);
  normalize(q2_);
  d1_ = max_degree(q1_);
  d2_ = max_degree(q2_);
  if (d1_ < 0 || d2_ < 0) throw PreconditionError("scroll.zero", "q1 or q2 vanishes");
  // Independence for every finite t: the 2x2 minors have no common root.
  UPoly g;
  for (std::size_t i = 0; i < q1_.size(); ++i)
    for (std::size_t j = i + 1; j < q1_.size(); ++j) g = gcd(g, q1_[i] * q2_[j] - q1_[j] * q2_[i]);
  if (g.is_zero() || g.degree() > 0)
    throw PreconditionError("scroll.independent", "q1(t) and q2(t) are dependent for some t");
}

MPoly ScrollMap::component(int i) const {
  const auto& R = scroll_ring();
  return MPoly::from_upoly(R, q2_[i], 1) + MPoly::variable(R, 0) * MPoly::from_upoly(R, q1_[i], 1);
}

std::vector<MPoly> ScrollMap::components() const {
  std::vector<MPoly> out;
  for (int i = 0; i < ambient(); ++i) out.push_back(component(i));
  return out;
}

ScrollMap ScrollMap::planar() const {
  return ScrollMap({q1_.begin(), q1_.begin() + 3}, {q2_.begin(), q2_.begin() + 3});
}

ScrollMap ScrollMap::extended(const UPoly& f13, const UPoly& f23) const {
  if (ambient() != 3) throw PreconditionError("scroll.extend", "map already has four components");
  auto a = q1_, b = q2_;
  a.push_back(f13);
  b.push_back(f23);
  ScrollMap out;
  out.q1_ = std::move(a);
  out.q2_ = std::move(b);
  out.d1_ = max_degree(out.q1_);
  out.d2_ = max_degree(out.q2_);
  return out;
}

std::string ScrollMap::str() const {
  std::string s;
  for (int i = 0; i < ambient(); ++i) s += (i ? " : " : "") + component(i).str();
  return s;
}

std::vector<UPoly> branch_parametrization(const ScrollMap& r) {
  if (r.ambient() != 3) throw PreconditionError("branch.ambient", "branch curve needs a planar map");
  const auto& q1 = r.q1();
  const auto& q2 = r.q2();
  // det[F, F_s, F_t] = c0 + s c1 on the line t; critical point s = -c0/c1.
  const UPoly c0 = det3(q2, q1, derivative(q2));
  const UPoly c1 = det3(q2, q1, derivative(q1));
  if (c0.is_zero() && c1.is_zero()) throw PreconditionError("branch.degenerate", "critical determinant vanishes");
  std::vector<UPoly> beta(3);
  for (int i = 0; i < 3; ++i) beta[i] = c1 * q2[i] - c0 * q1[i];
  const UPoly g = gcd(gcd(beta[0], beta[1]), beta[2]);
  if (g.is_zero()) throw PreconditionError("branch.degenerate", "critical curve collapses");
  if (g.degree() > 0)
    for (auto& b : beta) b = b / g;
  return beta;
}

PlaneCurve implicitize_planar(const std::vector<UPoly>& p) {
  const auto mb = param::mu_basis(param::ParamCurve::from_affine(p));
  const auto R = Ring::make({"x0", "x1", "x2", "t"});
  auto moving_line = [&](const std::vector<UPoly>& q) {
    MPoly L(R);
    for (int i = 0; i < 3; ++i) L += MPoly::variable(R, i) * MPoly::from_upoly(R, q[i], 3);
    return L;
  };
  const MPoly res = resultant(moving_line(mb.q1), moving_line(mb.q2), 3);
  if (res.is_zero()) throw InvariantError("implicitize.planar", "moving lines share a factor");
  return PlaneCurve(res.to_ring(plane_ring()));
}

PlaneCurve branch_curve(const ScrollMap& r) {
  const auto beta = branch_parametrization(r);
  const PlaneCurve B = implicitize_planar(beta);
  const int expected = 2 * r.degree() - 2;
  if (B.degree() != expected)
    throw InvariantError("branch.degree", "branch curve has degree " + std::to_string(B.degree()) + ", expected " +
                                              std::to_string(expected));
  return B;
}

int surface_degree_from_silhouette(int n) {
  if (n < 2 || n % 2 != 0) throw GoodnessError("plucker.degree", "silhouette degree " + std::to_string(n) + " is not 2d-2");
  return (n + 2) / 2;
}

ScrollMap reconstruct_rational_scroll(const PlaneCurve& B, const std::vector<Rat>& P, std::uint64_t seed) {
  surface_degree_from_silhouette(B.degree());
  return reconstruct_rational_scroll(B, curves::singular_inventory(B, seed), P, seed);
}

ScrollMap reconstruct_rational_scroll(const PlaneCurve& B, const curves::SingularityInventory& inv,
                                      const std::vector<Rat>& P, std::uint64_t seed) {
  const int d = surface_degree_from_silhouette(B.degree());
  const auto audit = curves::plucker_audit(B.degree(), inv.node_count, inv.cusp_count, d);
  for (const auto& c : audit.checks)
    if (!c.ok) throw GoodnessError(c.name, c.detail);
  const auto psi = param::parametrize(B, inv, P, seed);
  const auto dual = param::dual_parametrization(psi);
  if (dual.degree() != d)
    throw InvariantError("dual.degree", "dual curve has degree " + std::to_string(dual.degree()) + ", expected " +
                                            std::to_string(d));
  const auto mb = param::mu_basis(dual);
  ScrollMap r(mb.q1, mb.q2);
  if (!(branch_curve(r) == B)) throw GoodnessError("branch.match", "branch curve of the recovered map differs from B");
  return r;
}

}  // namespace scrollrec::scroll
