#include "scrollrec/oracle/oracle.hpp"

#include <algorithm>
#include <functional>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/prng.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::oracle {

using namespace algebra;

namespace {

std::vector<UPoly> derivative(const std::vector<UPoly>& v) {
  std::vector<UPoly> out;
  for (const auto& p : v) out.push_back(p.derivative());
  return out;
}

void require_shape(const Mat& M, int rows, int cols, const char* what) {
  bool ok = static_cast<int>(M.size()) == rows;
  for (const auto& r : M) ok = ok && static_cast<int>(r.size()) == cols;
  if (!ok)
    throw PreconditionError("oracle.projection", std::string(what) + " needs a " + std::to_string(rows) + "x" +
                                                     std::to_string(cols) + " matrix");
  if (rank(M, cols) != rows) throw PreconditionError("oracle.projection", "projection matrix is rank deficient");
}

// Laplace expansion along the first row; fine for 4 x 4.
template <class T>
T det(const std::vector<std::vector<T>>& A) {
  const std::size_t n = A.size();
  if (n == 1) return A[0][0];
  T out = A[0][0] - A[0][0];
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(A[i][k]);
      minor.push_back(std::move(row));
    }
    const T term = A[0][j] * det(minor);
    if (j % 2 == 0)
      out = out + term;
    else
      out = out - term;
  }
  return out;
}

// Canonical irreducible parts of a projective cluster, sorted.
std::vector<AlgCluster> canonical_parts(const AlgCluster& c) {
  std::vector<AlgCluster> out;
  for (const auto& n : normalize_projective(c))
    for (const auto& p : irreducible_parts(n)) out.push_back(canonical(p));
  return out;
}

void sort_clusters(std::vector<AlgCluster>& v) {
  std::sort(v.begin(), v.end(), [](const AlgCluster& a, const AlgCluster& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return str(a) < str(b);
  });
}

// Irreducible factors of a univariate polynomial, each required simple.
std::vector<UPoly> simple_factors(const UPoly& p, const char* invariant) {
  std::vector<UPoly> out;
  for (const auto& [f, m] : factor(p)) {
    if (m != 1) throw GoodnessError(invariant, "repeated root in " + p.str("t"));
    out.push_back(f);
  }
  return out;
}

std::vector<Rat> primitive_point(std::vector<Rat> p) {
  const Rat c = content_of(p);
  for (auto& x : p) x /= c;
  return p;
}

bool gradient_nonzero(const MPoly& F, const std::vector<Rat>& p) {
  for (int i = 0; i < 3; ++i)
    if (F.diff(i).evaluate(p) != 0) return true;
  return false;
}

std::string s(int v) { return std::to_string(v); }

void check_degree(Report& r, const std::string& name, const std::optional<PlaneCurve>& C, int expected) {
  if (!C) {
    r.add(name, expected == 0, "component missing");
    return;
  }
  r.add(name, C->degree() == expected, "degree " + s(C->degree()) + ", expected " + s(expected));
}

bool all_on(const PlaneCurve& C, const std::vector<AlgCluster>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](const AlgCluster& p) { return vanishes_at(C.equation(), p); });
}

int total_degree(const std::vector<AlgCluster>& pts) {
  int n = 0;
  for (const auto& p : pts) n += p.degree();
  return n;
}

int transversal_degree(const PlaneCurve& C, const PlaneCurve& D, const std::vector<AlgCluster>& pts) {
  std::vector<curves::Intersection> in;
  for (const auto& p : pts) in.push_back({p, 1});
  return total_degree(curves::transversal_filter(C, D, in));
}

void compare_part(Report& r, const std::string& name, const MPoly& part, const std::optional<PlaneCurve>& expected) {
  if (!expected) {
    r.add(name, part.is_constant(), part.is_constant() ? "absent as expected" : "unexpected component");
    return;
  }
  const bool ok = !part.is_constant() && equal_up_to_unit(part, expected->equation());
  r.add(name, ok, ok ? "matches" : "recomputed part differs (degree " + s(part.degree()) + ")");
}

}  // namespace

std::string to_string(Kind k) { return k == Kind::ruled ? "ruled" : "developable"; }

Kind kind_from_string(const std::string& text) {
  if (text == "ruled") return Kind::ruled;
  if (text == "developable") return Kind::developable;
  throw ParseError("scene.kind", "unknown scene kind '" + text + "'");
}

ScrollMap td_parametrization(int d, const Mat& M) {
  if (d < 3) throw PreconditionError("oracle.degree", "tangent developables need d >= 3");
  require_shape(M, 4, d + 1, "td_parametrization");
  std::vector<UPoly> q1(4), q2(4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k <= d; ++k) {
      q2[i] += UPoly::x(k) * M[i][k];
      if (k > 0) q1[i] += UPoly::x(k - 1) * (M[i][k] * k);
    }
  return ScrollMap(q1, q2);
}

ParamCurve td_curve(int d, const Mat& M) {
  require_shape(M, 4, d + 1, "td_curve");
  const auto& R = param_ring();
  std::vector<MPoly> comps;
  for (int i = 0; i < 4; ++i) {
    MPoly f(R);
    for (int k = 0; k <= d; ++k)
      f += MPoly::monomial(R, Monomial::from_exponents({k, d - k}), M[i][k]);
    comps.push_back(f);
  }
  return ParamCurve(comps);
}

ScrollMap tangent_scroll(const ParamCurve& H) {
  if (H.ambient_dim() != 4) throw PreconditionError("oracle.curve", "space curve needs four components");
  const auto a = H.affine();
  return ScrollMap(derivative(a), a);
}

ScrollMap scroll_parametrization(int d1, int d2, const Mat& M) {
  if (d1 < 1 || d2 < d1 || d1 + d2 < 3) throw PreconditionError("oracle.degree", "need 1 <= d1 <= d2 and d1+d2 >= 3");
  require_shape(M, 4, d1 + d2 + 2, "scroll_parametrization");
  std::vector<UPoly> q1(4), q2(4);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k <= d2; ++k) q2[i] += UPoly::x(k) * M[i][k];
    for (int k = 0; k <= d1; ++k) q1[i] += UPoly::x(k) * M[i][d2 + 1 + k];
  }
  return ScrollMap(q1, q2);
}

MPoly implicitize(const ScrollMap& sp) {
  if (sp.ambient() != 4) throw PreconditionError("implicitize.ambient", "surface map needs four components");
  const auto syz = param::syzygy_module({sp.q1(), sp.q2()}, 2);
  if (syz.size() != 2) throw InvariantError("implicitize.planes", "expected two moving planes");
  const auto R = Ring::make({"x0", "x1", "x2", "x3", "t"});
  auto moving_plane = [&](const std::vector<UPoly>& p) {
    MPoly L(R);
    for (int i = 0; i < 4; ++i) L += MPoly::variable(R, i) * MPoly::from_upoly(R, p[i], 4);
    return L;
  };
  const MPoly res = resultant(moving_plane(syz[0]), moving_plane(syz[1]), 4);
  if (res.is_zero()) throw InvariantError("implicitize.planes", "moving planes share a factor");
  MPoly F = res.to_ring(space_ring()).normalized();
  // A map that covers its image k times gives the k-th power.
  const MPoly sq = squarefree_part(F);
  if (sq.degree() != F.degree())
    throw GoodnessError("implicitize.proper", "surface map is not birational onto its image");
  return F;
}

MPoly fiber_normal_form(const MPoly& F) {
  const int n = F.degree();
  if (F.degree(3) != n)
    throw PreconditionError("split.center", "projection center lies on the surface");
  const auto& R = F.ring();
  const MPoly x3 = MPoly::variable(R, 3);
  // Remove the x3^(n-1) term by a shift along the fiber.
  const auto c = F.coeffs_in(3);
  MPoly G = F.subs(3, x3 - c[n - 1] * (Rat(1) / (c[n].constant_value() * n)));
  // Rescale x3 so the fiber coefficients have balanced contents.
  if (n >= 3) {
    const auto g = G.coeffs_in(3);
    if (!g[n - 3].is_zero() && !g[n - 2].is_zero()) G = G.subs(3, x3 * (g[n - 3].content() / g[n - 2].content()));
  }
  return G.normalized();
}

DiscriminantSplit discriminant_split(const MPoly& F0) {
  const MPoly F = fiber_normal_form(F0);
  const int n = F.degree();
  const MPoly affine = F.eval(0, Rat(1));
  const MPoly disc = discriminant(affine, 3);
  DiscriminantSplit out;
  out.discriminant = disc.homogenize(0, n * (n - 1)).to_ring(plane_ring()).normalized();
  const auto& P = plane_ring();
  out.mult1 = out.mult2 = out.mult3 = MPoly(P, Rat(1));
  for (const auto& part : squarefree_decomposition(out.discriminant)) {
    switch (part.multiplicity) {
      case 1: out.mult1 = part.factor; break;
      case 2: out.mult2 = part.factor; break;
      case 3: out.mult3 = part.factor; break;
      default:
        throw GoodnessError("split.multiplicity",
                            "discriminant has a part of multiplicity " + s(part.multiplicity));
    }
  }
  return out;
}

std::vector<AlgCluster> ruled_pinch_images(const ScrollMap& surface) {
  const auto& q1 = surface.q1();
  const auto& q2 = surface.q2();
  const auto dq1 = derivative(q1), dq2 = derivative(q2);
  std::vector<std::vector<UPoly>> A(4);
  for (int i = 0; i < 4; ++i) A[i] = {q1[i], q2[i], dq1[i], dq2[i]};
  const UPoly T = det(A);
  if (T.is_zero()) throw GoodnessError("pinch.torsal", "every line of the surface is torsal");
  std::vector<AlgCluster> out;
  for (const auto& m : simple_factors(T, "pinch.torsal")) {
    const Ext K(m);
    std::vector<std::vector<UPoly>> rows(4);
    for (int i = 0; i < 4; ++i)
      for (const auto& p : A[i]) rows[i].push_back(K.reduce(p));
    const auto ker = kernel_over(K, rows, 4);
    if (ker.size() != 1) throw GoodnessError("pinch.torsal", "torsal line with a degenerate tangent plane");
    // a q1 + b q2 + c q1' + e q2' = 0: the pinch point sits at s = c / e.
    const UPoly& c = ker[0][2];
    const UPoly& e = ker[0][3];
    if (K.is_zero(e)) throw GoodnessError("pinch.infinity", "pinch point at s = infinity");
    const UPoly sp = K.div(c, e);
    AlgCluster cl{m, {}};
    for (int i = 0; i < 3; ++i) cl.coords.push_back(K.reduce(q2[i] + K.mul(sp, K.reduce(q1[i]))));
    for (auto& p : canonical_parts(cl)) out.push_back(std::move(p));
  }
  sort_clusters(out);
  return out;
}

std::vector<AlgCluster> special_point_images(const ParamCurve& H) {
  if (H.ambient_dim() != 4) throw PreconditionError("special.curve", "space curve needs four components");
  const int d = H.degree();
  if (d < 3) throw PreconditionError("special.degree", "curve degree must be at least 3");
  std::vector<std::vector<MPoly>> A(4);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a <= 3; ++a) {
      MPoly f = H[i];
      for (int k = 0; k < a; ++k) f = f.diff(0);
      for (int k = a; k < 3; ++k) f = f.diff(1);
      A[i].push_back(f);
    }
  const MPoly W = det(A);
  if (W.is_zero()) throw GoodnessError("special.degenerate", "third-derivative determinant vanishes");
  if (W.degree(0) != W.degree()) throw GoodnessError("special.infinity", "special point at t = infinity");
  const UPoly w = W.eval(1, Rat(1)).to_upoly(0);
  const auto affine = H.affine();
  std::vector<AlgCluster> out;
  for (const auto& m : simple_factors(w, "special.multiplicity")) {
    AlgCluster cl{m, {}};
    for (int i = 0; i < 3; ++i) cl.coords.push_back(affine[i] % m);
    for (auto& p : canonical_parts(cl)) out.push_back(std::move(p));
  }
  sort_clusters(out);
  return out;
}

std::vector<Rat> branch_point(const ScrollMap& r, const PlaneCurve& B) {
  const auto beta = branch_parametrization(r);
  for (int k = 0; k < 64; ++k) {
    const Rat t0((k % 2 ? -1 : 1) * ((k + 1) / 2));
    std::vector<Rat> p;
    for (const auto& b : beta) p.push_back(b(t0));
    if (std::all_of(p.begin(), p.end(), [](const Rat& x) { return x == 0; })) continue;
    if (B.equation().evaluate(p) != 0) throw InvariantError("branch.point", "branch parametrization leaves B");
    if (gradient_nonzero(B.equation(), p)) return primitive_point(p);
  }
  throw GoodnessError("branch.point", "no smooth rational point found");
}

namespace {

std::vector<Rat> curve_point(const ParamCurve& H, const PlaneCurve& C) {
  const auto a = H.affine();
  for (int k = 0; k < 64; ++k) {
    const Rat t0((k % 2 ? -1 : 1) * ((k + 1) / 2));
    std::vector<Rat> p;
    for (int i = 0; i < 3; ++i) p.push_back(a[i](t0));
    if (std::all_of(p.begin(), p.end(), [](const Rat& x) { return x == 0; })) continue;
    if (gradient_nonzero(C.equation(), p)) return primitive_point(p);
  }
  throw GoodnessError("curve.point", "no smooth rational point found");
}

template <class F>
void stage(Scene& sc, const std::string& name, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    sc.problems.push_back(name + ": " + e.what());
  }
}

std::optional<PlaneCurve> part_curve(const MPoly& p) {
  if (p.is_constant()) return std::nullopt;
  return PlaneCurve(p);
}

}  // namespace

Scene assemble_ruled(int d1, int d2, const Mat& M, std::uint64_t seed) {
  Scene sc;
  sc.kind = Kind::ruled;
  sc.d1 = d1;
  sc.d2 = d2;
  sc.d = d1 + d2;
  sc.seed = seed;
  sc.projection = M;
  bool ok = true;
  stage(sc, "surface", [&] {
    sc.surface = scroll_parametrization(d1, d2, M);
    sc.equation = implicitize(sc.surface);
  });
  if (!sc.problems.empty()) return sc;
  stage(sc, "split", [&] {
    const auto split = discriminant_split(sc.equation);
    sc.B = part_curve(split.mult1);
    sc.W = part_curve(split.mult2);
    if (!split.mult3.is_constant()) throw GoodnessError("split.cusps", "ruled scene has a multiplicity-3 part");
  });
  ok = sc.problems.empty() && sc.B;
  if (!ok) return sc;
  stage(sc, "smooth_point", [&] { sc.smooth_point = branch_point(sc.surface.planar(), *sc.B); });
  stage(sc, "pinch", [&] { sc.pinch_images = ruled_pinch_images(sc.surface); });
  return sc;
}

Scene assemble_developable(int d, const Mat& M, std::uint64_t seed) {
  Scene sc;
  sc.kind = Kind::developable;
  sc.d = d;
  sc.d1 = d - 1;
  sc.d2 = d;
  sc.seed = seed;
  sc.projection = M;
  stage(sc, "surface", [&] {
    sc.curve = td_curve(d, M);
    sc.surface = tangent_scroll(*sc.curve);
    sc.equation = implicitize(sc.surface);
  });
  if (!sc.problems.empty()) return sc;
  stage(sc, "split", [&] {
    const auto split = discriminant_split(sc.equation);
    sc.lines = part_curve(split.mult1);
    sc.D = part_curve(split.mult2);
    sc.C = part_curve(split.mult3);
  });
  if (!sc.problems.empty() || !sc.C) return sc;
  stage(sc, "smooth_point", [&] { sc.smooth_point = curve_point(*sc.curve, *sc.C); });
  stage(sc, "pinch", [&] { sc.pinch_images = special_point_images(*sc.curve); });
  return sc;
}

namespace {

Mat random_projection(Prng& rng, int cols) {
  Mat M(4, Vec(cols));
  for (auto& row : M)
    for (auto& x : row) x = Rat(rng.uniform(-3, 3));
  return M;
}

template <class Assemble>
Scene generate(std::uint64_t seed, int cols, int max_attempts, const std::string& what, Assemble&& assemble) {
  Prng rng(seed);
  std::string last;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Mat M = random_projection(rng, cols);
    if (rank(M, cols) != 4) continue;
    Scene sc = assemble(M);
    const Report audit = genericity_audit(sc);
    if (audit.ok()) return sc;
    last = audit.str();
  }
  throw GoodnessError("scene.attempts", "no good " + what + " scene within " + s(max_attempts) + " draws\n" + last);
}

}  // namespace

Scene generate_ruled(int d1, int d2, std::uint64_t seed, int max_attempts) {
  return generate(seed, d1 + d2 + 2, max_attempts, "ruled",
                  [&](const Mat& M) { return assemble_ruled(d1, d2, M, seed); });
}

Scene generate_developable(int d, std::uint64_t seed, int max_attempts) {
  return generate(seed, d + 1, max_attempts, "developable",
                  [&](const Mat& M) { return assemble_developable(d, M, seed); });
}

Report genericity_audit(const Scene& sc) {
  Report r;
  for (const auto& p : sc.problems) r.add("scene.assemble", false, p);
  if (!sc.problems.empty()) return r;
  const int d = sc.d;
  if (sc.kind == Kind::ruled) {
    r.add("surface.degree", sc.equation.degree() == d, "degree " + s(sc.equation.degree()) + ", expected " + s(d));
    r.add("center.off_surface", sc.equation.degree(3) == sc.equation.degree(), "F(0,0,0,1) != 0");
    check_degree(r, "split.B", sc.B, 2 * d - 2);
    check_degree(r, "split.W", sc.W, (d - 1) * (d - 2) / 2);
    if (!sc.B || !sc.W) return r;
    try {
      for (const auto& c : curves::plucker_audit(*sc.B, d, sc.seed).checks) r.checks.push_back(c);
    } catch (const Error& e) {
      r.add("plucker.inventory", false, e.what());
    }
    const bool on_b = sc.smooth_point.size() == 3 && sc.B->equation().evaluate(sc.smooth_point) == 0 &&
                      gradient_nonzero(sc.B->equation(), sc.smooth_point);
    r.add("smooth_point", on_b, "rational smooth point on B");
    const int expected = 2 * (d - 2);
    r.add("pinch.count", total_degree(sc.pinch_images) == expected,
          s(total_degree(sc.pinch_images)) + " pinch images, expected " + s(expected));
    const bool on = all_on(*sc.B, sc.pinch_images) && all_on(*sc.W, sc.pinch_images);
    r.add("pinch.on_curves", on, "pinch images lie on B and W");
    if (on)
      r.add("pinch.transversal", transversal_degree(*sc.B, *sc.W, sc.pinch_images) == expected,
            "B and W cross transversally at the pinch images");
  } else {
    r.add("surface.degree", sc.equation.degree() == 2 * d - 2,
          "degree " + s(sc.equation.degree()) + ", expected " + s(2 * d - 2));
    r.add("center.off_surface", sc.equation.degree(3) == sc.equation.degree(), "F(0,0,0,1) != 0");
    check_degree(r, "split.C", sc.C, d);
    check_degree(r, "split.D", sc.D, 2 * (d - 1) * (d - 3));
    check_degree(r, "split.lines", sc.lines, 3 * (d - 2));
    if (!sc.C || !sc.curve) return r;
    if (sc.lines) {
      // Every inflection tangent of C must be a component of the lines part.
      const auto a = sc.curve->affine();
      const std::vector<UPoly> p(a.begin(), a.begin() + 3);
      const auto dp = derivative(p);
      const auto ddp = derivative(dp);
      const UPoly infl = det(std::vector<std::vector<UPoly>>{p, dp, ddp});
      int found = 0;
      bool all_lines = !infl.is_zero();
      if (all_lines) {
        for (const auto& [m, mult] : factor(infl)) {
          if (mult != 1) all_lines = false;
          for (int lam = 0; lam <= sc.lines->degree() && all_lines; ++lam) {
            AlgCluster cl{m, {}};
            for (int i = 0; i < 3; ++i) cl.coords.push_back((p[i] + dp[i] * Rat(lam)) % m);
            all_lines = vanishes_at(sc.lines->equation(), cl);
          }
          found += m.degree();
        }
      }
      r.add("lines.inflection", all_lines && found == 3 * (d - 2),
            s(found) + " inflection tangents, expected " + s(3 * (d - 2)));
    }
    try {
      const auto inv = curves::singular_inventory(*sc.C, sc.seed);
      const int nodes = (d - 1) * (d - 2) / 2;
      r.add("C.singularities", inv.node_count == nodes && inv.cusp_count == 0,
            s(inv.node_count) + " nodes and " + s(inv.cusp_count) + " cusps, expected " + s(nodes) + " nodes");
    } catch (const Error& e) {
      r.add("C.singularities", false, e.what());
    }
    const bool on_c = sc.smooth_point.size() == 3 && sc.C->equation().evaluate(sc.smooth_point) == 0 &&
                      gradient_nonzero(sc.C->equation(), sc.smooth_point);
    r.add("smooth_point", on_c, "rational smooth point on C");
    const int expected = 4 * (d - 3);
    r.add("special.count", total_degree(sc.pinch_images) == expected,
          s(total_degree(sc.pinch_images)) + " special points, expected " + s(expected));
    if (sc.D) {
      const bool on = all_on(*sc.C, sc.pinch_images) && all_on(*sc.D, sc.pinch_images);
      r.add("special.on_curves", on, "special point images lie on C and D");
      if (on)
        r.add("special.transversal", transversal_degree(*sc.C, *sc.D, sc.pinch_images) == expected,
              "C and D cross transversally at the special point images");
    }
  }
  return r;
}

Report verify_reconstruction(const Scene& sc, const ScrollMap& surface) {
  Report r;
  if (sc.kind != Kind::ruled) {
    r.add("verify.kind", false, "scene is not ruled");
    return r;
  }
  try {
    const MPoly F = implicitize(surface);
    r.add("verify.degree", F.degree() == sc.d, "degree " + s(F.degree()) + ", expected " + s(sc.d));
    const auto split = discriminant_split(F);
    compare_part(r, "verify.B", split.mult1, sc.B);
    compare_part(r, "verify.W", split.mult2, sc.W);
    r.add("verify.no_cusps", split.mult3.is_constant(), "no multiplicity-3 part");
  } catch (const Error& e) {
    r.add("verify.recompute", false, e.what());
  }
  return r;
}

Report verify_reconstruction(const Scene& sc, const ParamCurve& curve) {
  Report r;
  if (sc.kind != Kind::developable) {
    r.add("verify.kind", false, "scene is not developable");
    return r;
  }
  try {
    const MPoly F = implicitize(tangent_scroll(curve));
    r.add("verify.degree", F.degree() == 2 * sc.d - 2,
          "degree " + s(F.degree()) + ", expected " + s(2 * sc.d - 2));
    const auto split = discriminant_split(F);
    compare_part(r, "verify.C", split.mult3, sc.C);
    compare_part(r, "verify.D", split.mult2, sc.D);
    compare_part(r, "verify.lines", split.mult1, sc.lines);
  } catch (const Error& e) {
    r.add("verify.recompute", false, e.what());
  }
  return r;
}

}  // namespace scrollrec::oracle
