#include "scrollrec/lift3d/lift3d.hpp"

#include <algorithm>
#include <future>
#include <map>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/gcd.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/numfield.hpp"
#include "scrollrec/algebra/prng.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::lift3d {

using namespace algebra;

namespace {

constexpr int S = 0, T = 1, V = 2;  // variables of the ring (s, t, v)

const RingPtr& stv_ring() {
  static const RingPtr R = Ring::make({"s", "t", "v"});
  return R;
}

std::string str(int v) { return std::to_string(v); }

MPoly upoly_in(const RingPtr& R, const UPoly& p, int var) { return MPoly::from_upoly(R, p, var); }

// Pseudo-division of f by H in s; returns the remainder of lc^steps * f and
// the number of steps.
std::pair<MPoly, int> reduce_steps(MPoly f, const MPoly& H) {
  const int sv = f.ring()->require("s");
  const MPoly h = H.ring() == f.ring() ? H : H.to_ring(f.ring());
  const int k = h.degree(sv);
  const MPoly lc = h.coeff_of(sv, k);
  int steps = 0;
  while (!f.is_zero() && f.degree(sv) >= k) {
    const int n = f.degree(sv);
    const MPoly c = f.coeff_of(sv, n);
    f = f * lc - c.mul_monomial(Monomial::of_var(sv, n - k), Rat(1)) * h;
    ++steps;
  }
  return {f, steps};
}

// Arithmetic modulo H(s, t) without denominators: an element (p, e) stands
// for p / lc^e, where lc is the leading coefficient of H in s.
class ModH {
 public:
  struct Elt {
    MPoly p;
    int e = 0;
  };

  explicit ModH(const MPoly& H) : H_(H.to_ring(scroll_ring())) {
    lc_.push_back(MPoly(scroll_ring(), Rat(1)));
    lc_.push_back(H_.coeff_of(S, H_.degree(S)));
  }

  Elt lift(const MPoly& f) const {
    auto [r, steps] = reduce_steps(f, H_);
    return {std::move(r), steps};
  }
  Elt one() const { return {lc_[0], 0}; }
  Elt mul(const Elt& a, const Elt& b) const {
    auto [r, steps] = reduce_steps(a.p * b.p, H_);
    return {std::move(r), a.e + b.e + steps};
  }
  Elt add(const Elt& a, const Elt& b) const {
    const int e = std::max(a.e, b.e);
    return {at(a, e) + at(b, e), e};
  }
  Elt scale(Elt a, const Rat& c) const {
    a.p *= c;
    return a;
  }
  /// p * lc^(e - a.e), the representative with denominator lc^e.
  MPoly at(const Elt& a, int e) const {
    if (e < a.e) throw InvariantError("lift.reduce", "exponent below representative");
    return e == a.e ? a.p : a.p * lc_pow(e - a.e);
  }
  std::vector<Elt> powers(const Elt& a, int n) const {
    std::vector<Elt> out{one()};
    for (int i = 1; i <= n; ++i) out.push_back(mul(out.back(), a));
    return out;
  }

 private:
  const MPoly& lc_pow(int k) const {
    while (static_cast<int>(lc_.size()) <= k) lc_.push_back(lc_.back() * lc_[1]);
    return lc_[k];
  }
  MPoly H_;
  mutable std::vector<MPoly> lc_;
};

// Numerator and denominator reduced modulo H with a common denominator,
// then cleared of common factors.
RationalFunction reduce_fraction(const RationalFunction& f, const ModH& R) {
  const auto n = R.lift(f.num), d = R.lift(f.den);
  const int e = std::max(n.e, d.e);
  MPoly num = R.at(n, e), den = R.at(d, e);
  const MPoly g = gcd(num, den);
  if (!g.is_constant()) {
    num = divide_exact(num, g);
    den = divide_exact(den, g);
  }
  const Rat c = den.content();
  const Rat sign = den.lc() < 0 ? Rat(-1) : Rat(1);
  return {num * (sign / c), den * (sign / c)};
}

// P(-a0 / a1) = 0 modulo H for P in (s, t, v), by Horner's rule on
// a1^deg P * P(-a0 / a1).
bool vanishes_at_root(const ModH& R, const MPoly& P, const MPoly& a0, const MPoly& a1) {
  const auto cf = P.coeffs_in(V);
  const int n = static_cast<int>(cf.size()) - 1;
  const auto na0 = R.lift((-a0).to_ring(scroll_ring()));
  const auto pa1 = R.powers(R.lift(a1.to_ring(scroll_ring())), n);
  ModH::Elt acc = R.lift(cf[n].to_ring(scroll_ring()));
  for (int i = n - 1; i >= 0; --i)
    acc = R.add(R.mul(acc, na0), R.mul(R.lift(cf[i].to_ring(scroll_ring())), pa1[n - i]));
  return acc.p.is_zero();
}

MPoly primitive_v(const MPoly& p) {
  if (p.is_zero()) return p;
  const MPoly c = content_in(p, V);
  return c.is_constant() ? p.normalized() : divide_exact(p, c).normalized();
}

// q1(v) x q2(v).
std::vector<UPoly> cross(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Powers 0..n of p.
std::vector<MPoly> powers(const MPoly& p, int n) {
  std::vector<MPoly> out{MPoly(p.ring(), Rat(1))};
  for (int i = 1; i <= n; ++i) out.push_back(out.back() * p);
  return out;
}

// f(U, V) * den(U)^du * den(V)^dv modulo H, for f in the ring (s, t).
class RationalSubstitution {
 public:
  RationalSubstitution(const ModH& R, const MatePair& m, int du, int dv) : R_(R), du_(du), dv_(dv) {
    nu_ = R.powers(R.lift(m.U.num), du);
    duu_ = R.powers(R.lift(m.U.den), du);
    nv_ = R.powers(R.lift(m.V.num), dv);
    dvv_ = R.powers(R.lift(m.V.den), dv);
  }
  ModH::Elt operator()(const MPoly& f) const {
    ModH::Elt out{MPoly(scroll_ring()), 0};
    for (const auto& term : f.terms()) {
      const int i = term.mono.exp(S), j = term.mono.exp(T);
      if (i > du_ || j > dv_) throw InvariantError("lift.substitute", "degree exceeds substitution bound");
      const auto x = R_.mul(R_.mul(nu_[i], duu_[du_ - i]), R_.mul(nv_[j], dvv_[dv_ - j]));
      out = R_.add(out, R_.scale(x, term.coeff));
    }
    return out;
  }

 private:
  const ModH& R_;
  int du_, dv_;
  std::vector<ModH::Elt> nu_, duu_, nv_, dvv_;
};

// Unknown layout of F3 = F23(t) + s F13(t): coefficients of 1, t, ..., t^d2,
// then s, s t, ..., s t^d1.
std::vector<MPoly> ansatz_basis(int d1, int d2) {
  const auto& R = scroll_ring();
  std::vector<MPoly> out;
  for (int k = 0; k <= d2; ++k) out.push_back(MPoly::monomial(R, Monomial::of_var(T, k)));
  for (int k = 0; k <= d1; ++k) out.push_back(MPoly::monomial(R, Monomial::of_var(S, 1) * Monomial::of_var(T, k)));
  return out;
}

Vec ansatz_coords(const UPoly& f13, const UPoly& f23, int d1, int d2) {
  Vec v;
  for (int k = 0; k <= d2; ++k) v.push_back(f23.coeff(k));
  for (int k = 0; k <= d1; ++k) v.push_back(f13.coeff(k));
  return v;
}

// Picks a kernel vector independent of F0, F1, F2 and builds the lift.
SurfaceParam lift_from_kernel(const ScrollMap& r, const std::vector<Vec>& kernel, const std::string& route) {
  const int d1 = r.d1(), d2 = r.d2();
  if (kernel.size() != 4)
    throw InvariantError("lift.kernel", route + ": solution space has dimension " + str(static_cast<int>(kernel.size())) +
                                            ", expected 4");
  RowSpace known(d1 + d2 + 2);
  for (int i = 0; i < 3; ++i) known.add(ansatz_coords(r.q1()[i], r.q2()[i], d1, d2));
  if (known.rank() != 3) throw InvariantError("lift.planar", "planar components are dependent");
  RowSpace span = known;
  for (const auto& v : kernel) span.add(v);
  if (span.rank() != 4) throw InvariantError("lift.kernel", route + ": kernel does not contain F0, F1, F2");
  for (const auto& v : kernel) {
    if (!known.add(v)) continue;
    std::vector<Rat> a(v.begin(), v.begin() + d2 + 1), b(v.begin() + d2 + 1, v.end());
    return SurfaceParam(r.extended(UPoly(b), UPoly(a)));
  }
  throw InvariantError("lift.kernel", route + ": no kernel element independent of F0, F1, F2");
}

UPoly eval_k(const Ext& K, const UPoly& p, const UPoly& x) { return kpoly::eval(K, kpoly::from_upoly(p), x); }

// Rows over K of a linear condition set, expanded into rational rows.
void add_rows(RowSpace& rs, const std::vector<std::vector<UPoly>>& rows, const UPoly& m) {
  for (const auto& row : expand_over_basis(rows, m)) rs.add(row);
}

}  // namespace

SurfaceParam::SurfaceParam(ScrollMap sp) : scroll(std::move(sp)) {
  if (scroll.ambient() != 4) throw PreconditionError("surface.ambient", "surface map needs four components");
  const int d1 = scroll.d1(), d2 = scroll.d2();
  Mat rows;
  for (int i = 0; i < 4; ++i) rows.push_back(ansatz_coords(scroll.q1()[i], scroll.q2()[i], d1, d2));
  if (rank(rows, d1 + d2 + 2) != 4) throw InvariantError("surface.independent", "components are linearly dependent");
}

std::pair<int, int> bidegree(const MPoly& f) {
  const int s = f.ring()->require("s"), t = f.ring()->require("t");
  return {f.degree(s), f.degree(t)};
}

std::pair<int, int> double_curve_bidegree(int d1, int d2) {
  const int d = d1 + d2;
  return {d - 2, (d - 2) * (d2 - 1)};
}

Pullback pullback_singular_image(const ScrollMap& r, const PlaneCurve& W, const std::vector<MPoly>& factors,
                                 std::uint64_t seed) {
  if (r.ambient() != 3) throw PreconditionError("lift.planar", "expected a planar scroll map");
  const int d = r.degree();
  const int expected = (d - 1) * (d - 2) / 2;
  if (W.degree() != expected)
    throw GoodnessError("lift.W_degree",
                        "singular image has degree " + str(W.degree()) + ", expected " + str(expected));
  Pullback pb;
  pb.h = W.equation().compose(r.components());
  if (pb.h.is_zero()) throw GoodnessError("lift.pullback", "the scroll map lands in W");
  std::vector<MPoly> parts;
  if (!factors.empty()) {
    for (const auto& f : factors) {
      const MPoly g = f.to_ring(scroll_ring());
      if (g.is_constant() || !try_divide(pb.h, g))
        throw PreconditionError("lift.prefactored", "supplied factor does not divide h: " + g.str());
      parts.push_back(g.normalized());
    }
  } else {
    for (const auto& p : factor(pb.h, seed)) parts.push_back(p.factor);
  }
  const auto target = double_curve_bidegree(r.d1(), r.d2());
  std::vector<MPoly> hits;
  for (const auto& p : parts)
    if (bidegree(p) == target && std::find(hits.begin(), hits.end(), p) == hits.end()) hits.push_back(p);
  if (hits.size() != 1)
    throw GoodnessError("lift.H", str(static_cast<int>(hits.size())) + " factors of h have bidegree (" +
                                      str(target.first) + ", " + str(target.second) + "), expected exactly one");
  pb.H = hits.front();
  return pb;
}

MPoly reduce_mod(const MPoly& f, const MPoly& H) { return reduce_steps(f, H).first; }

MatePair mate_functions(const ScrollMap& r, const MPoly& H) {
  if (r.ambient() != 3) throw PreconditionError("mates.planar", "expected a planar scroll map");
  const auto& R = stv_ring();
  std::vector<MPoly> X;
  for (int i = 0; i < 3; ++i) X.push_back(r.component(i).to_ring(R));
  const auto c = cross(r.q1(), r.q2());
  MPoly G(R);
  for (int i = 0; i < 3; ++i) G += X[i] * upoly_in(R, c[i], V);
  // The line t itself always passes through r(s, t).
  const MPoly Gq = divide_exact(G, MPoly::variable(R, V) - MPoly::variable(R, T));
  // H(u, v) as coefficients h_j(v) of u^j.
  std::vector<MPoly> hj;
  for (const auto& cf : H.coeffs_in(S)) hj.push_back(cf.remap(R, {S, V}));
  const int e = static_cast<int>(hj.size()) - 1;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    // X = lambda (q2(v) + u q1(v)) gives u = -N / D.
    const MPoly N = X[a] * upoly_in(R, r.q2()[b], V) - X[b] * upoly_in(R, r.q2()[a], V);
    const MPoly D = X[a] * upoly_in(R, r.q1()[b], V) - X[b] * upoly_in(R, r.q1()[a], V);
    if (reduce_mod(D, H).is_zero()) continue;
    const auto Np = powers(-N, e), Dp = powers(D, e);
    MPoly Hhat(R);
    for (int j = 0; j <= e; ++j) Hhat += hj[j] * Np[j] * Dp[e - j];
    const MPoly Hr = primitive_v(reduce_mod(Hhat, H)), Gr = primitive_v(reduce_mod(Gq, H));
    if (Hr.is_zero() || Gr.is_zero()) continue;
    MPoly A = Hr, B = Gr;
    while (!B.is_zero()) {
      MPoly Rm = primitive_v(reduce_mod(pseudo_remainder(A, B, V), H));
      A = std::move(B);
      B = std::move(Rm);
    }
    if (A.degree(V) != 1) continue;
    const MPoly a1 = A.coeff_of(V, 1), a0 = A.coeff_of(V, 0);
    // N(V), D(V) with V = -a0 / a1, scaled by a1^deg.
    const int nd = std::max(N.degree(V), D.degree(V));
    const auto m0 = powers(-a0, nd), m1 = powers(a1, nd);
    auto at_V = [&](const MPoly& P) {
      MPoly out(R);
      const auto cf = P.coeffs_in(V);
      for (int p = 0; p < static_cast<int>(cf.size()); ++p) out += cf[p] * m0[p] * m1[nd - p];
      return out.to_ring(scroll_ring());
    };
    MatePair mp;
    mp.V = {(-a0).to_ring(scroll_ring()), a1.to_ring(scroll_ring())};
    mp.U = {-at_V(N), at_V(D)};
    if (reduce_mod(mp.U.den, H).is_zero() || reduce_mod(mp.V.den, H).is_zero()) continue;
    // Certificates: the linear gcd divides both polynomials (so the mate
    // lies on H and on a line through r(s, t)), and it is not the point itself.
    const ModH Rh(H);
    if (!vanishes_at_root(Rh, Hr, a0, a1) || !vanishes_at_root(Rh, Gr, a0, a1))
      throw InvariantError("mates.gcd", "gcd does not divide its inputs");
    if (reduce_mod(mp.V.num - MPoly::variable(scroll_ring(), T) * mp.V.den, H).is_zero())
      throw InvariantError("mates.diagonal", "mate equals the point");
    mp.U = reduce_fraction(mp.U, Rh);
    mp.V = reduce_fraction(mp.V, Rh);
    return mp;
  }
  throw RetryError("mates.gcd", "mate polynomial over the function field of H is not linear");
}

std::optional<std::pair<UPoly, UPoly>> pointwise_mate(const ScrollMap& r, const MPoly& H, const UPoly& m,
                                                      const UPoly& s, const UPoly& t) {
  const Ext K(m);
  std::vector<UPoly> X;
  for (int i = 0; i < 3; ++i) X.push_back(K.reduce(eval_k(K, r.q2()[i], t) + K.mul(s, eval_k(K, r.q1()[i], t))));
  const auto c = cross(r.q1(), r.q2());
  int n = 0;
  for (const auto& p : c) n = std::max(n, p.degree());
  KPoly G(n + 1);
  for (int p = 0; p <= n; ++p)
    for (int i = 0; i < 3; ++i) G[p] = K.reduce(G[p] + K.mul(X[i], K.reduce(c[i].coeff(p))));
  kpoly::trim(K, G);
  auto [Gq, rem] = kpoly::divmod(K, G, KPoly{-t, UPoly(1)});
  if (!rem.empty()) throw InvariantError("mates.line", "point is not on its own line");
  const auto hj = H.coeffs_in(S);
  const int e = static_cast<int>(hj.size()) - 1;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    auto lin = [&](const std::vector<UPoly>& q) {
      KPoly out;
      const int deg = std::max(q[a].degree(), q[b].degree());
      for (int p = 0; p <= deg; ++p) out.push_back(K.reduce(K.mul(X[a], q[b].coeff(p)) - K.mul(X[b], q[a].coeff(p))));
      kpoly::trim(K, out);
      return out;
    };
    const KPoly N = lin(r.q2()), D = lin(r.q1());
    if (D.empty()) continue;
    KPoly Hhat;
    KPoly negN = kpoly::scale(K, N, UPoly(-1));
    for (int j = 0; j <= e; ++j) {
      KPoly term = kpoly::from_upoly(hj[j].to_upoly(T));
      for (int i = 0; i < j; ++i) term = kpoly::mul(K, term, negN);
      for (int i = j; i < e; ++i) term = kpoly::mul(K, term, D);
      Hhat = kpoly::add(K, Hhat, term);
    }
    if (Hhat.empty()) continue;
    const KPoly g = kpoly::gcd(K, Gq, Hhat);
    if (kpoly::degree(g) != 1) continue;
    const UPoly v0 = K.reduce(-g[0]);
    const UPoly dv = kpoly::eval(K, D, v0);
    if (K.is_zero(dv)) continue;
    const UPoly u0 = K.reduce(-K.div(kpoly::eval(K, N, v0), dv));
    return std::make_pair(u0, v0);
  }
  return std::nullopt;
}

SurfaceParam collapse_mates(const ScrollMap& r, const MPoly& H, const MatePair& mates) {
  const int d1 = r.d1(), d2 = r.d2();
  const auto basis = ansatz_basis(d1, d2);
  const ModH R(H);
  const RationalSubstitution sub(R, mates, 1, std::max(d1, d2));
  const auto F = r.components();
  std::vector<ModH::Elt> basis_uv, basis_st, F_st;
  for (const auto& b : basis) {
    basis_uv.push_back(sub(b));
    basis_st.push_back(R.lift(b));
  }
  for (const auto& f : F) F_st.push_back(R.lift(f));
  std::map<Monomial, Vec> rows;
  const int n = static_cast<int>(basis.size());
  for (int j = 0; j < 3; ++j) {
    // F_j(U,V) F3(s,t) - F3(U,V) F_j(s,t) for each basis element of F3.
    const auto Fj_uv = sub(F[j]);
    std::vector<ModH::Elt> cols;
    int e = 0;
    for (int x = 0; x < n; ++x) {
      cols.push_back(R.add(R.mul(Fj_uv, basis_st[x]), R.scale(R.mul(basis_uv[x], F_st[j]), Rat(-1))));
      e = std::max(e, cols.back().e);
    }
    for (int x = 0; x < n; ++x) {
      const MPoly col = R.at(cols[x], e);
      for (const auto& term : col.terms()) {
        auto mono = term.mono * Monomial::of_var(V, j);  // keeps the three relations apart
        auto& row = rows[mono];
        if (row.empty()) row.assign(n, Rat(0));
        row[x] = term.coeff;
      }
    }
  }
  Mat M;
  for (auto& [mono, row] : rows) M.push_back(std::move(row));
  return lift_from_kernel(r, nullspace(M, n), "collapse_mates");
}

SurfaceParam collapse_mates_pointwise(const ScrollMap& r, const MPoly& H, std::uint64_t seed) {
  const int d1 = r.d1(), d2 = r.d2();
  const auto basis = ansatz_basis(d1, d2);
  const int n = static_cast<int>(basis.size());
  const auto F = r.components();
  Prng rng(seed);
  RowSpace rs(n);
  int stable = 0, used = 0;
  for (int sample = 0; sample < 64 && stable < 3; ++sample) {
    const Rat t0(rng.uniform(-60, 60), rng.uniform(1, 7));
    const UPoly h = H.eval(T, t0).to_upoly(S);
    if (h.degree() != H.degree(S)) continue;
    const auto parts = factor(h);
    if (std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.second != 1; })) continue;
    const int before = rs.rank();
    bool ok = true;
    for (const auto& [m, mult] : parts) {
      const UPoly u = UPoly::x() % m;
      const auto mate = pointwise_mate(r, H, m, u, UPoly(t0));
      if (!mate) {
        ok = false;
        break;
      }
      const AlgCluster p{m, {u, UPoly(t0)}}, q{m, {mate->first, mate->second}};
      const Ext K(m);
      std::vector<std::vector<UPoly>> rows;
      for (int j = 0; j < 3; ++j) {
        const UPoly fp = evaluate_at(F[j], p), fq = evaluate_at(F[j], q);
        std::vector<UPoly> row;
        for (const auto& b : basis) row.push_back(K.reduce(K.mul(fq, evaluate_at(b, p)) - K.mul(evaluate_at(b, q), fp)));
        rows.push_back(std::move(row));
      }
      add_rows(rs, rows, m);
    }
    if (!ok) continue;
    ++used;
    stable = rs.rank() == before ? stable + 1 : 0;
  }
  if (stable < 3) throw InvariantError("lift.samples", "rank did not stabilize over the sampled points");
  return lift_from_kernel(r, rs.kernel(), "collapse_mates_pointwise");
}

std::optional<std::pair<UPoly, UPoly>> pinch_preimage(const ScrollMap& r, const AlgCluster& X) {
  if (X.dim() != 3) throw PreconditionError("pinch.point", "expected a point of P^2");
  const Ext K(X.minpoly);
  const auto c = cross(r.q1(), r.q2());
  int n = 0;
  for (const auto& p : c) n = std::max(n, p.degree());
  KPoly G(n + 1);
  for (int p = 0; p <= n; ++p)
    for (int i = 0; i < 3; ++i) G[p] = K.reduce(G[p] + K.mul(X.coords[i], K.reduce(c[i].coeff(p))));
  kpoly::trim(K, G);
  if (G.empty()) return std::nullopt;
  const KPoly g = kpoly::gcd(K, G, kpoly::derivative(K, G));
  if (kpoly::degree(g) != 1) return std::nullopt;
  const UPoly t = K.reduce(-g[0]);
  std::vector<UPoly> a, b;
  for (int i = 0; i < 3; ++i) {
    a.push_back(eval_k(K, r.q1()[i], t));
    b.push_back(eval_k(K, r.q2()[i], t));
  }
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const UPoly den = K.reduce(K.mul(X.coords[i], a[j]) - K.mul(X.coords[j], a[i]));
    if (K.is_zero(den)) continue;
    const UPoly num = K.reduce(K.mul(X.coords[i], b[j]) - K.mul(X.coords[j], b[i]));
    const UPoly s = K.reduce(-K.div(num, den));
    // X must be proportional to q2(t) + s q1(t).
    std::vector<UPoly> img;
    for (int l = 0; l < 3; ++l) img.push_back(K.reduce(b[l] + K.mul(s, a[l])));
    bool prop = true;
    for (int l = 0; l < 3 && prop; ++l)
      for (int l2 = l + 1; l2 < 3 && prop; ++l2)
        prop = K.is_zero(K.mul(X.coords[l], img[l2]) - K.mul(X.coords[l2], img[l]));
    if (!prop) return std::nullopt;
    return std::make_pair(s, t);
  }
  return std::nullopt;
}

namespace {

struct PinchRows {
  bool valid = false;
  std::vector<std::vector<UPoly>> rows;  // over Q[u]/(m)
  UPoly m;
};

PinchRows pinch_rows(const ScrollMap& r, const Pullback& pb, const AlgCluster& X,
                     const std::vector<MPoly>& basis) {
  PinchRows out;
  out.m = X.minpoly;
  const auto pre = pinch_preimage(r, X);
  if (!pre) return out;
  const Ext K(X.minpoly);
  const AlgCluster P{X.minpoly, {pre->first, pre->second}};
  auto tangent = [&](const MPoly& f) -> std::optional<std::pair<UPoly, UPoly>> {
    if (!K.is_zero(evaluate_at(f, P))) return std::nullopt;
    const UPoly fs = evaluate_at(f.diff(S), P), ft = evaluate_at(f.diff(T), P);
    if (K.is_zero(fs) && K.is_zero(ft)) return std::nullopt;
    return std::make_pair(K.reduce(-ft), fs);
  };
  auto w = tangent(pb.h);
  if (!w) w = tangent(pb.H);
  if (!w) return out;
  auto directional = [&](const MPoly& f) {
    return K.reduce(K.mul(evaluate_at(f.diff(S), P), w->first) + K.mul(evaluate_at(f.diff(T), P), w->second));
  };
  const auto F = r.components();
  for (int j = 0; j < 3; ++j) {
    const UPoly fj = evaluate_at(F[j], P), dfj = directional(F[j]);
    std::vector<UPoly> row;
    for (const auto& b : basis) row.push_back(K.reduce(K.mul(directional(b), fj) - K.mul(evaluate_at(b, P), dfj)));
    out.rows.push_back(std::move(row));
  }
  out.valid = true;
  return out;
}

}  // namespace

SurfaceParam use_pinch_points(const ScrollMap& r, const Pullback& pb, const std::vector<AlgCluster>& candidates,
                              const PinchOptions& opts) {
  const int d = r.degree();
  const int count = opts.count > 0 ? opts.count : 2 * (d - 2);
  const auto basis = ansatz_basis(r.d1(), r.d2());
  const int n = static_cast<int>(basis.size());
  std::vector<PinchRows> rows;
  std::vector<int> deg;
  for (const auto& c : candidates) {
    for (const auto& p : irreducible_parts(c)) {
      rows.push_back(pinch_rows(r, pb, p, basis));
      deg.push_back(rows.back().valid ? p.degree() : count + 1);
    }
  }
  auto attempt = [&](const std::vector<int>& subset) -> std::optional<std::vector<Vec>> {
    RowSpace rs(n);
    for (int i : subset) add_rows(rs, rows[i].rows, rows[i].m);
    auto ker = rs.kernel();
    if (ker.size() != 4) return std::nullopt;
    return ker;
  };
  const auto subsets = subsets_of_degree(deg, count);
  const int jobs = std::max(1, opts.jobs);
  for (std::size_t start = 0; start < subsets.size(); start += jobs) {
    const std::size_t end = std::min(subsets.size(), start + jobs);
    std::vector<std::future<std::optional<std::vector<Vec>>>> futures;
    for (std::size_t i = start; i < end; ++i)
      futures.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, attempt, subsets[i]));
    for (auto& f : futures) {
      auto ker = f.get();
      if (ker) return lift_from_kernel(r, *ker, "use_pinch_points");
    }
  }
  throw InvariantError("lift.pinch", "no Galois-stable subset of " + str(static_cast<int>(deg.size())) +
                                         " candidate clusters gives a 4-dimensional solution space");
}

std::string to_string(Strategy s) { return s == Strategy::mates ? "mates" : "pinch"; }

Strategy strategy_from_string(const std::string& s) {
  if (s == "mates") return Strategy::mates;
  if (s == "pinch") return Strategy::pinch;
  throw ParseError("strategy", "unknown strategy '" + s + "'");
}

SurfaceParam reconstruct_rat_ruled_surface(const PlaneCurve& B, const PlaneCurve& W, const std::vector<Rat>& P,
                                           const Options& opts) {
  const ScrollMap r = scroll::reconstruct_rational_scroll(B, P, opts.seed);
  const Pullback pb = pullback_singular_image(r, W, opts.prefactored, opts.seed);
  if (opts.strategy == Strategy::mates) {
    try {
      return collapse_mates(r, pb.H, mate_functions(r, pb.H));
    } catch (const RetryError&) {
      return collapse_mates_pointwise(r, pb.H, opts.seed);
    }
  }
  std::vector<AlgCluster> candidates = opts.pinch_images;
  if (candidates.empty()) {
    const auto in = curves::intersect(B, W, opts.seed);
    candidates = curves::transversal_filter(B, W, in);
  }
  return use_pinch_points(r, pb, candidates, {opts.pinch_count, opts.jobs});
}

}  // namespace scrollrec::lift3d
