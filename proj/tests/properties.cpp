#include "properties.hpp"

#include <chrono>
#include <functional>
#include <optional>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/lift3d/lift3d.hpp"
#include "scrollrec/oracle/oracle.hpp"
#include "scrollrec/param/param.hpp"
#include "scrollrec/scroll/scroll.hpp"

namespace scrollrec::props {

using namespace algebra;

namespace {

using Failure = std::optional<std::string>;

// Runs cases until `cases` of them were checked. A case returns nullopt on
// success or a description of the failure; a generator may reject a draw by
// throwing Skip, which does not count.
struct Skip {};

SuiteResult run(const std::string& name, int cases, const std::function<Failure(int)>& one) {
  SuiteResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  int draws = 0;
  while (r.cases < cases && draws < 20 * cases) {
    ++draws;
    Failure f;
    try {
      f = one(draws);
    } catch (const Skip&) {
      continue;
    } catch (const std::exception& e) {
      f = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (f) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = "case " + std::to_string(r.cases) + ": " + *f;
    }
  }
  if (r.cases < cases) {
    ++r.failures;
    r.first_failure = "generator produced only " + std::to_string(r.cases) + " usable cases";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Rat ratio(const Int& a, const Int& b) {
  Rat q(a, b);
  q.canonicalize();
  return q;
}

const RingPtr& xy() {
  static const RingPtr R = Ring::make({"x", "y"});
  return R;
}

UPoly random_upoly(Prng& rng, int deg, long bound) {
  std::vector<Rat> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = Rat(rng.uniform(-bound, bound));
  c[deg] = Rat(rng.nonzero(bound));
  return UPoly(c);
}

// Degree exactly dx in x with a constant leading coefficient, degree <= dy in y.
MPoly random_xy(Prng& rng, int dx, int dy, long bound) {
  MPoly f(xy());
  for (int i = 0; i <= dx; ++i)
    for (int j = 0; j <= dy; ++j) {
      const long c = (i == dx && j == 0) ? rng.nonzero(bound) : (i == dx ? 0 : rng.uniform(-bound, bound));
      if (c != 0) f += MPoly::monomial(xy(), Monomial::from_exponents({i, j}), Rat(c));
    }
  return f;
}

std::string show(const MPoly& f) { return f.str(); }

// Rational roots of a nonzero polynomial by the rational root theorem.
bool has_rational_root(const UPoly& p) {
  const UPoly q = p.primitive();
  if (q.coeff(0) == 0) return true;
  auto divisors = [](Int n) {
    std::vector<Int> out;
    n = abs(n);
    for (Int k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        out.push_back(k);
        if (k * k != n) out.push_back(n / k);
      }
    return out;
  };
  const Int a0 = q.coeff(0).get_num(), an = q.coeff(q.degree()).get_num();
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int sign : {1, -1})
        if (q(ratio(Int(num * sign), den)) == 0) return true;
  return false;
}

std::vector<UPoly> mul_mat(const Mat& M, const std::vector<UPoly>& v) {
  std::vector<UPoly> out(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += v[j] * M[i][j];
  return out;
}

UPoly dot(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
  UPoly s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// c with a = c * b for a nonzero constant c, if any.
std::optional<Rat> constant_ratio(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
  std::optional<Rat> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].is_zero()) {
      if (!a[i].is_zero()) return std::nullopt;
      continue;
    }
    const Rat r = a[i].coeff(a[i].degree()) / b[i].coeff(b[i].degree());
    if (a[i] != b[i] * r) return std::nullopt;
    if (c && *c != r) return std::nullopt;
    c = r;
  }
  if (!c || *c == 0) return std::nullopt;
  return c;
}

std::vector<Rat> affine_point(const param::ParamCurve& psi, const Rat& t) {
  std::vector<Rat> p;
  for (const auto& c : psi.affine()) p.push_back(c(t));
  return p;
}

}  // namespace

SuiteResult resultant_multiplicativity(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("resultant multiplicativity", cases, [&](int) -> Failure {
    const MPoly f = random_xy(rng, rng.uniform(1, 3), rng.uniform(0, 2), 4);
    const MPoly g = random_xy(rng, rng.uniform(1, 3), rng.uniform(0, 2), 4);
    const MPoly h = random_xy(rng, rng.uniform(1, 3), rng.uniform(0, 2), 4);
    const MPoly lhs = resultant(f * g, h, 0);
    const MPoly rhs = resultant(f, h, 0) * resultant(g, h, 0);
    if (lhs != rhs) return "Res(fg, h) != Res(f, h) Res(g, h) for f = " + show(f) + ", g = " + show(g) + ", h = " + show(h);
    // Swapping the arguments changes the sign by (-1)^(deg f deg h).
    const int sign = (f.degree(0) * h.degree(0)) % 2 ? -1 : 1;
    if (resultant(h, f, 0) != resultant(f, h, 0) * Rat(sign)) return "Res(h, f) has the wrong sign";
    return std::nullopt;
  });
}

SuiteResult squarefree_reassembly(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("squarefree reassembly", cases, [&](int) -> Failure {
    const MPoly a = random_xy(rng, rng.uniform(1, 2), rng.uniform(0, 1), 3);
    const MPoly b = random_xy(rng, 1, rng.uniform(0, 1), 3);
    const MPoly c = random_xy(rng, 1, rng.uniform(0, 1), 3);
    const MPoly f = a * b.pow(2) * c.pow(3) * Rat(rng.nonzero(5));
    const auto parts = squarefree_decomposition(f);
    MPoly prod(xy(), Rat(1));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      if (p.factor.is_constant()) return "constant part";
      if (squarefree_part(p.factor).normalized() != p.factor.normalized()) return "part " + show(p.factor) + " not squarefree";
      for (std::size_t j = 0; j < i; ++j) {
        if (parts[j].multiplicity == p.multiplicity) return "repeated multiplicity";
        if (!gcd(parts[j].factor, p.factor).is_constant()) return "parts share a factor";
      }
      prod *= p.factor.pow(p.multiplicity);
    }
    if (prod.normalized() != f.normalized()) return "product of parts differs from " + show(f);
    return std::nullopt;
  });
}

SuiteResult factor_certificates(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("factor certificates", cases, [&](int i) -> Failure {
    if (i % 2) {
      // Univariate: products of low-degree pieces, possibly repeated.
      UPoly p(Rat(rng.nonzero(4)));
      const int pieces = rng.uniform(2, 4);
      for (int k = 0; k < pieces; ++k) {
        const UPoly q = random_upoly(rng, rng.uniform(1, 3), 5);
        p = p * q;
        if (rng.uniform(0, 3) == 0) p = p * q;
      }
      UPoly prod(p.coeff(p.degree()));
      for (const auto& [f, m] : factor(p)) {
        if (f.coeff(f.degree()) != 1) return "factor " + f.str() + " not monic";
        if (f.degree() > 3) return "factor " + f.str() + " has degree above its pieces";
        if (f.degree() > 1 && has_rational_root(f)) return "factor " + f.str() + " has a rational root";
        for (int k = 0; k < m; ++k) prod = prod * f;
      }
      if (prod != p) return "product of factors differs from " + p.str();
      return std::nullopt;
    }
    const MPoly f = random_xy(rng, rng.uniform(1, 2), rng.uniform(1, 2), 4);
    const MPoly g = random_xy(rng, rng.uniform(1, 2), rng.uniform(1, 2), 4);
    const MPoly p = f * g;
    MPoly prod(xy(), Rat(1));
    Prng cert(rng.next());
    for (const auto& part : factor(p, rng.next())) {
      if (!certify_irreducible(part.factor, cert)) return "factor " + show(part.factor) + " not certified irreducible";
      prod *= part.factor.pow(part.multiplicity);
    }
    if (prod.normalized() != p.normalized()) return "product of factors differs from " + show(p);
    return std::nullopt;
  });
}

SuiteResult mu_basis_wedge(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("mu-basis wedge and degree sum", cases, [&](int) -> Failure {
    const int n = rng.uniform(2, 5);
    std::vector<UPoly> p;
    for (int i = 0; i < 3; ++i) p.push_back(random_upoly(rng, rng.uniform(i == 0 ? n : 0, n), 4));
    if (gcd(gcd(p[0], p[1]), p[2]).degree() > 0) throw Skip{};
    param::ParamCurve curve;
    try {
      curve = param::ParamCurve::from_affine(p);
    } catch (const PreconditionError&) {
      throw Skip{};
    }
    const auto mb = param::mu_basis(curve);
    const auto a = curve.affine();
    if (mb.d1 + mb.d2 != n) return "degrees " + std::to_string(mb.d1) + " + " + std::to_string(mb.d2) + " != " + std::to_string(n);
    if (!dot(mb.q1, a).is_zero() || !dot(mb.q2, a).is_zero()) return "mu-basis vector is not a syzygy";
    if (!constant_ratio(param::cross(mb.q1, mb.q2), a)) return "q1 x q2 is not a constant multiple of p";
    return std::nullopt;
  });
}

SuiteResult conic_mu_basis(std::uint64_t seed, int cases) {
  Prng rng(seed);
  const std::vector<UPoly> phi{UPoly(Rat(1)), UPoly::x(), UPoly::x(2)};
  const std::vector<UPoly> a{UPoly::x(), UPoly(Rat(-1)), UPoly()}, b{UPoly(), UPoly::x(), UPoly(Rat(-1))};
  return run("conic mu-basis", cases, [&](int) -> Failure {
    const Mat M = random_invertible(rng, 3, 3);
    const auto curve = param::ParamCurve::from_affine(mul_mat(M, phi));
    const auto mb = param::mu_basis(curve);
    if (mb.d1 != 1 || mb.d2 != 1) return "mu-degrees are not (1, 1)";
    // The standard pair transported by the inverse transpose.
    const Mat Mi = inverse(M);
    Mat T(3, Vec(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) T[i][j] = Mi[j][i];
    const auto A = mul_mat(T, a), B = mul_mat(T, b);
    auto coords = [](const std::vector<UPoly>& v) {
      Vec out;
      for (const auto& c : v)
        for (int k = 0; k <= 1; ++k) out.push_back(c.coeff(k));
      return out;
    };
    const Vec ca = coords(A), cb = coords(B);
    Mat sys(6, Vec(2));
    for (int k = 0; k < 6; ++k) sys[k] = {ca[k], cb[k]};
    Mat change;
    for (const auto* q : {&mb.q1, &mb.q2}) {
      const auto x = solve(sys, coords(*q), 2);
      if (!x) return "mu-basis vector outside the span of the standard pair";
      change.push_back(*x);
    }
    if (determinant(change) == 0) return "change of basis is singular";
    return std::nullopt;
  });
}

SuiteResult parametrization_certificate(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("parametrization certificate", cases, [&](int) -> Failure {
    const int n = rng.uniform(2, 3);
    Mat M(3, Vec(n + 1));
    for (auto& row : M)
      for (auto& x : row) x = Rat(rng.uniform(-3, 3));
    std::vector<UPoly> p(3);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k <= n; ++k) p[i] += UPoly::x(k) * M[i][k];
    curves::PlaneCurve C;
    std::vector<Rat> P{M[0][0], M[1][0], M[2][0]};
    try {
      C = scroll::implicitize_planar(p);
      if (C.degree() != n || P == std::vector<Rat>(3, Rat(0))) throw Skip{};
      bool smooth = false;
      for (int v = 0; v < 3; ++v) smooth = smooth || C.equation().diff(v).evaluate(P) != 0;
      if (!smooth) throw Skip{};
      curves::singular_inventory(C);
    } catch (const Error&) {
      throw Skip{};
    }
    const auto psi = param::parametrize(C, P, rng.next());
    if (psi.degree() != C.degree()) return "parametrization degree differs from the curve degree";
    if (!psi.pullback(C.equation()).is_zero()) return "C(psi) is not identically zero";
    if (!(scroll::implicitize_planar(psi.affine()) == C)) return "implicit equation of psi differs from C";
    // Birationality: a general point has exactly one preimage.
    const Rat t0 = ratio(rng.uniform(-30, 30), rng.uniform(1, 7));
    const auto X = affine_point(psi, t0);
    const auto a = psi.affine();
    UPoly g;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) g = gcd(g, a[i] * X[j] - a[j] * X[i]);
    if (g != UPoly::x() - UPoly(t0)) return "fiber of psi over psi(t0) is " + g.str();
    return std::nullopt;
  });
}

SuiteResult mate_involution(std::uint64_t seed, int cases) {
  Prng rng(seed);
  struct Setup {
    scroll::ScrollMap r;
    MPoly H;
  };
  std::vector<Setup> setups;
  for (auto [d1, d2, s] : {std::tuple{1, 3, 11}, std::tuple{2, 2, 4}}) {
    const auto sc = oracle::generate_ruled(d1, d2, s);
    const auto r = sc.surface.planar();
    setups.push_back({r, lift3d::pullback_singular_image(r, *sc.W).H});
  }
  return run("mate involution mod H", cases, [&](int i) -> Failure {
    const std::size_t which = static_cast<std::size_t>(i) % setups.size();
    const auto& [r, H] = setups[which];
    const Rat t0 = ratio(rng.uniform(-40, 40), rng.uniform(1, 6));
    std::vector<AlgCluster> pts;
    for (const auto& [m, mult] : factor(H.eval(1, t0).to_upoly(0)))
      if (mult == 1) pts.push_back({m, {UPoly::x() % m, UPoly(t0)}});
    if (pts.empty()) throw Skip{};
    const auto& p = pts[rng.uniform(0, static_cast<long>(pts.size()) - 1)];
    const Ext K(p.minpoly);
    const auto mate = lift3d::pointwise_mate(r, H, p.minpoly, p.coords[0], p.coords[1]);
    if (!mate) return "no mate at t = " + to_string(t0);
    const AlgCluster q{p.minpoly, {mate->first, mate->second}};
    if (!K.is_zero(evaluate_at(H, q))) return "mate is not on H";
    if (K.is_zero(mate->first - p.coords[0]) && K.is_zero(mate->second - p.coords[1])) return "mate is the point itself";
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const UPoly lhs = K.mul(evaluate_at(r.component(a), p), evaluate_at(r.component(b), q));
        const UPoly rhs = K.mul(evaluate_at(r.component(b), p), evaluate_at(r.component(a), q));
        if (!K.is_zero(lhs - rhs)) return "point and mate have different images";
      }
    const auto back = lift3d::pointwise_mate(r, H, p.minpoly, mate->first, mate->second);
    if (!back || !K.is_zero(back->first - p.coords[0]) || !K.is_zero(back->second - p.coords[1]))
      return "mate of the mate is not the point";
    return std::nullopt;
  });
}

SuiteResult plucker_identities(std::uint64_t seed, int cases) {
  return run("Pluecker identities on generated silhouettes", cases, [&](int i) -> Failure {
    const bool first = i % 2;
    const auto sc = oracle::generate_ruled(first ? 1 : 2, first ? 3 : 2, seed + static_cast<std::uint64_t>(i));
    const auto rep = curves::plucker_audit(*sc.B, sc.d, seed);
    if (!rep.ok()) return rep.str();
    if (sc.W->degree() != (sc.d - 1) * (sc.d - 2) / 2) return "W has degree " + std::to_string(sc.W->degree());
    return std::nullopt;
  });
}

SuiteResult nullspace_exactness(std::uint64_t seed, int cases) {
  Prng rng(seed);
  return run("nullspace exactness", cases, [&](int) -> Failure {
    const int m = rng.uniform(1, 7), n = rng.uniform(1, 7);
    const int r = rng.uniform(0, std::min(m, n));
    Mat L(m, Vec(r)), R(r, Vec(n));
    for (auto& row : L)
      for (auto& x : row) x = ratio(rng.uniform(-4, 4), rng.uniform(1, 3));
    for (auto& row : R)
      for (auto& x : row) x = Rat(rng.uniform(-4, 4));
    Mat A(m, Vec(n, Rat(0)));
    if (r > 0) A = multiply(L, R);
    const auto ker = nullspace(A, n);
    for (const auto& v : ker)
      for (const auto& x : mul_vec(A, v))
        if (x != 0) return std::string("kernel vector is not annihilated");
    const int rk = rank(A, n);
    if (static_cast<int>(ker.size()) + rk != n) return std::string("rank + nullity != columns");
    if (rk > r) return std::string("rank exceeds the planted bound");
    if (!ker.empty() && rank(ker, n) != static_cast<int>(ker.size())) return std::string("kernel basis is dependent");
    // Every vector of ker R lies in ker A.
    for (const auto& v : nullspace(R, n)) {
      Mat with = ker;
      with.push_back(v);
      if (rank(with, n) != static_cast<int>(ker.size())) return std::string("kernel misses a planted vector");
    }
    return std::nullopt;
  });
}

std::vector<SuiteResult> run_all(std::uint64_t seed, int cases) {
  return {resultant_multiplicativity(seed, cases), squarefree_reassembly(seed + 1, cases),
          factor_certificates(seed + 2, cases),     mu_basis_wedge(seed + 3, cases),
          conic_mu_basis(seed + 4, cases),          parametrization_certificate(seed + 5, cases),
          mate_involution(seed + 6, cases),         plucker_identities(seed + 7, cases),
          nullspace_exactness(seed + 8, cases)};
}

}  // namespace scrollrec::props
