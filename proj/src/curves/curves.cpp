#include "scrollrec/curves/curves.hpp"

#include <algorithm>
#include <sstream>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::curves {

using namespace algebra;

PlaneCurve::PlaneCurve(const MPoly& F) {
  const MPoly G = F.to_ring(plane_ring());
  if (G.is_constant()) throw PreconditionError("curve.degree", "curve equation is constant");
  if (!G.is_homogeneous()) throw PreconditionError("curve.homogeneous", "curve equation is not homogeneous");
  eq_ = G.normalized();
  deg_ = eq_.degree();
}

PlaneCurve PlaneCurve::parse(const std::string& text) { return PlaneCurve(MPoly::parse(plane_ring(), text)); }

namespace {

constexpr int kAttempts = 16;

// The curve in a random projective frame, dehomogenized at x0 = 1: g(x1, x2)
// with full degree in x2 and no singular or intersection points on the line
// at infinity.
struct Chart {
  Mat M;
  MPoly g;
};

bool chart_ok(const MPoly& G, int n) {
  const UPoly at_inf = G.eval(0, 0).eval(1, 1).to_upoly(2);
  if (at_inf.degree() != n) return false;
  return gcd(at_inf, at_inf.derivative()).degree() == 0;
}

AlgCluster chart_point(const Mat& M, const UPoly& m, const UPoly& b) {
  AlgCluster c;
  c.minpoly = m.monic();
  c.coords = {UPoly(Rat(1)), UPoly::x() % c.minpoly, b % c.minpoly};
  return transform(c, M);
}

std::vector<AlgCluster> canonical_parts(const AlgCluster& c) {
  std::vector<AlgCluster> out;
  for (const auto& p : normalize_projective(c))
    for (const auto& q : irreducible_parts(p)) out.push_back(canonical(q));
  return out;
}

// Second chart coordinate at the points over the roots of m, from the
// degree-one subresultant of f and g in x2; nullopt when some fiber
// contains more than one common point.
std::optional<UPoly> fiber_coordinate(const MPoly& f, const MPoly& g, const UPoly& m) {
  auto s1 = linear_subresultant(f, g, 2);
  if (!s1) return std::nullopt;
  const UPoly a = s1->a.to_upoly(1) % m;
  if (gcd(a, m).degree() != 0) return std::nullopt;
  const Ext K(m);
  return K.mul(-(s1->b.to_upoly(1)), K.inv(a));
}

std::vector<UPoly> gradient_at(const MPoly& F, const AlgCluster& p) {
  std::vector<UPoly> g;
  for (int i = 0; i < 3; ++i) g.push_back(evaluate_at(F.diff(i), p));
  return g;
}

std::vector<UPoly> cross(const Ext& K, const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
  return {K.reduce(a[1] * b[2] - a[2] * b[1]), K.reduce(a[2] * b[0] - a[0] * b[2]),
          K.reduce(a[0] * b[1] - a[1] * b[0])};
}

bool all_zero(const std::vector<UPoly>& v) {
  return std::all_of(v.begin(), v.end(), [](const UPoly& x) { return x.is_zero(); });
}

}  // namespace

int classify_point(const PlaneCurve& C, const AlgCluster& p) {
  const MPoly& F = C.equation();
  if (!vanishes_at(F, p)) throw PreconditionError("curve.point", "point is not on the curve");
  const Ext K(p.minpoly);
  if (!all_zero(gradient_at(F, p))) return 0;
  std::vector<std::vector<UPoly>> H(3, std::vector<UPoly>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) H[i][j] = H[j][i] = evaluate_at(F.diff(i).diff(j), p);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l)
          if (!K.is_zero(H[i][k] * H[j][l] - H[i][l] * H[j][k])) return 2;
  int row = -1;
  for (int i = 0; i < 3 && row < 0; ++i)
    if (!all_zero(H[i])) row = i;
  if (row < 0) return -1;
  // Tangent direction: a vector annihilated by the Hessian and independent
  // of the point itself.
  const auto& l = H[row];
  const std::vector<std::vector<UPoly>> candidates = {
      {l[1], -l[0], UPoly()}, {l[2], UPoly(), -l[0]}, {UPoly(), l[2], -l[1]}};
  std::vector<UPoly> pt = {K.reduce(p.coords[0]), K.reduce(p.coords[1]), K.reduce(p.coords[2])};
  for (const auto& w : candidates) {
    if (all_zero(w) || all_zero(cross(K, w, pt))) continue;
    UPoly cubic;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const UPoly wijk = K.mul(K.mul(w[i], w[j]), w[k]);
          if (wijk.is_zero()) continue;
          cubic += K.mul(evaluate_at(F.diff(i).diff(j).diff(k), p), wijk);
        }
    return K.is_zero(cubic) ? -1 : 3;
  }
  return -1;
}

SingularityInventory singular_inventory(const PlaneCurve& C, std::uint64_t seed) {
  const MPoly& F = C.equation();
  const int n = C.degree();
  Prng rng(seed);
  std::string reason = "no attempt made";
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Mat M = random_invertible(rng, 3, 4 + attempt);
    const MPoly G = substitute_linear(F, M, plane_ring());
    if (!chart_ok(G, n)) {
      reason = "unlucky frame";
      continue;
    }
    SingularityInventory inv;
    if (n < 2) return inv;
    const MPoly g = G.eval(0, 1);
    const MPoly disc = discriminant(g, 2);
    if (disc.is_zero()) throw PreconditionError("curve.reduced", "curve is not reduced");
    bool ok = true;
    for (const auto& [part, mult] : squarefree(disc.to_upoly(1))) {
      if (mult == 1) continue;
      if (mult > 3) {
        ok = false;
        reason = "discriminant part of multiplicity " + std::to_string(mult);
        break;
      }
      for (const auto& [m, e] : factor(part)) {
        auto b = fiber_coordinate(g, g.diff(2), m);
        if (!b) {
          ok = false;
          reason = "two singular points in one fiber";
          break;
        }
        const AlgCluster pts = chart_point(M, m, *b);
        const int type = classify_point(C, pts);
        if (type != mult) {
          ok = false;
          reason = type < 0 ? "singular point that is neither a node nor a cusp" : "classification mismatch";
          break;
        }
        auto& dest = mult == 2 ? inv.nodes : inv.cusps;
        for (auto& q : canonical_parts(pts)) dest.push_back(std::move(q));
      }
      if (!ok) break;
    }
    if (!ok) continue;
    auto by_str = [](const AlgCluster& a, const AlgCluster& b) { return str(a) < str(b); };
    std::sort(inv.nodes.begin(), inv.nodes.end(), by_str);
    std::sort(inv.cusps.begin(), inv.cusps.end(), by_str);
    for (const auto& c : inv.nodes) inv.node_count += c.degree();
    for (const auto& c : inv.cusps) inv.cusp_count += c.degree();
    return inv;
  }
  throw GoodnessError("curve.singularities", reason);
}

std::vector<Intersection> intersect(const PlaneCurve& C, const PlaneCurve& D, std::uint64_t seed) {
  if (gcd(C.equation(), D.equation()).degree() > 0)
    throw PreconditionError("intersect.common_component", "curves share a component");
  Prng rng(seed);
  const int bezout = C.degree() * D.degree();
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Mat M = random_invertible(rng, 3, 4 + attempt);
    const MPoly G = substitute_linear(C.equation(), M, plane_ring());
    const MPoly H = substitute_linear(D.equation(), M, plane_ring());
    const UPoly gi = G.eval(0, 0).eval(1, 1).to_upoly(2), hi = H.eval(0, 0).eval(1, 1).to_upoly(2);
    if (gi.degree() != C.degree() || hi.degree() != D.degree() || gcd(gi, hi).degree() != 0) continue;
    const MPoly g = G.eval(0, 1), h = H.eval(0, 1);
    const UPoly R = resultant(g, h, 2).to_upoly(1);
    if (R.degree() != bezout) throw InvariantError("intersect.bezout", "resultant degree " + std::to_string(R.degree()) +
                                                                         " != " + std::to_string(bezout));
    std::vector<Intersection> out;
    bool ok = true;
    int total = 0;
    for (const auto& [m, mult] : factor(R)) {
      auto b = fiber_coordinate(g, h, m);
      if (!b) {
        ok = false;
        break;
      }
      const AlgCluster pts = chart_point(M, m, *b);
      if (!vanishes_at(C.equation(), pts) || !vanishes_at(D.equation(), pts))
        throw InvariantError("intersect.membership", "back-substituted point is not on both curves");
      for (auto& q : canonical_parts(pts)) out.push_back({std::move(q), mult});
      total += m.degree() * mult;
    }
    if (!ok) continue;
    if (total != bezout) throw InvariantError("intersect.bezout", "multiplicities do not add up");
    std::sort(out.begin(), out.end(), [](const Intersection& a, const Intersection& b) {
      if (a.points.degree() != b.points.degree()) return a.points.degree() < b.points.degree();
      return str(a.points) < str(b.points);
    });
    return out;
  }
  throw GoodnessError("intersect.projection", "no admissible projection found");
}

std::vector<AlgCluster> transversal_filter(const PlaneCurve& C, const PlaneCurve& D,
                                           const std::vector<Intersection>& clusters) {
  std::vector<AlgCluster> out;
  for (const auto& cl : clusters) {
    for (const auto& p : irreducible_parts(cl.points)) {
      const Ext K(p.minpoly);
      const auto gc = gradient_at(C.equation(), p), gd = gradient_at(D.equation(), p);
      if (all_zero(gc) || all_zero(gd) || all_zero(cross(K, gc, gd))) continue;
      out.push_back(p);
    }
  }
  return out;
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& c : checks) os << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
  return os.str();
}

Report plucker_audit(int n, int delta, int kappa, int d) {
  Report r;
  auto s = [](int v) { return std::to_string(v); };
  r.add("plucker.degree", n == 2 * d - 2, "n = " + s(n) + ", 2d-2 = " + s(2 * d - 2));
  r.add("plucker.genus", delta + kappa == (n - 1) * (n - 2) / 2,
        "delta + kappa = " + s(delta + kappa) + ", (n-1)(n-2)/2 = " + s((n - 1) * (n - 2) / 2));
  r.add("plucker.kappa", 2 * kappa == 3 * (n - 2), "kappa = " + s(kappa) + ", 3(n-2)/2 = " + s(3 * (n - 2)) + "/2");
  r.add("plucker.class", n * (n - 1) - 2 * delta - 3 * kappa == d,
        "n(n-1) - 2 delta - 3 kappa = " + s(n * (n - 1) - 2 * delta - 3 * kappa) + ", d = " + s(d));
  return r;
}

Report plucker_audit(const PlaneCurve& B, int d, std::uint64_t seed) {
  const auto inv = singular_inventory(B, seed);
  return plucker_audit(B.degree(), inv.node_count, inv.cusp_count, d);
}

}  // namespace scrollrec::curves
