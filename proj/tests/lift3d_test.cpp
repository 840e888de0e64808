#include <doctest.h>

#include <map>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/lift3d/lift3d.hpp"
#include "scrollrec/oracle/oracle.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;
using namespace scrollrec::lift3d;

namespace {

struct Fixture {
  oracle::Scene scene;
  ScrollMap r;
  Pullback pb;
};

// One reconstructed scroll per type, shared by the cases below.
const Fixture& fixture(int d1, int d2) {
  static std::map<std::pair<int, int>, Fixture> cache;
  auto it = cache.find({d1, d2});
  if (it == cache.end()) {
    Fixture f;
    f.scene = oracle::generate_ruled(d1, d2, 3);
    f.r = scroll::reconstruct_rational_scroll(*f.scene.B, f.scene.smooth_point, 1);
    f.pb = pullback_singular_image(f.r, *f.scene.W);
    it = cache.emplace(std::pair{d1, d2}, std::move(f)).first;
  }
  return it->second;
}

// Points of H over t = t0, as clusters (s, t) over Q[u]/(m).
std::vector<AlgCluster> fiber_points(const MPoly& H, const Rat& t0) {
  std::vector<AlgCluster> out;
  for (const auto& [m, mult] : factor(H.eval(1, t0).to_upoly(0)))
    if (mult == 1) out.push_back({m, {UPoly::x() % m, UPoly(t0)}});
  return out;
}

UPoly value(const RationalFunction& f, const AlgCluster& p) {
  const Ext K(p.minpoly);
  return K.div(evaluate_at(f.num, p), evaluate_at(f.den, p));
}

void check_verified(const oracle::Scene& sc, const SurfaceParam& S) {
  const auto rep = oracle::verify_reconstruction(sc, S.scroll);
  INFO(rep.str());
  CHECK(rep.ok());
}

}  // namespace

TEST_CASE("bidegree of a polynomial in (s, t)") {
  const auto& R = scroll_ring();
  CHECK(bidegree(MPoly::parse(R, "s^2*t + s*t^4 + 3")) == std::pair{2, 4});
  CHECK(bidegree(MPoly::parse(R, "t^3 - 1")) == std::pair{0, 3});
}

TEST_CASE("double curve bidegree matches the pulled-back W of generated scenes") {
  CHECK(double_curve_bidegree(1, 3) == std::pair{2, 4});
  CHECK(double_curve_bidegree(2, 2) == std::pair{2, 2});
  for (auto [d1, d2] : {std::pair{1, 3}, std::pair{2, 2}}) {
    const auto& f = fixture(d1, d2);
    CHECK(bidegree(f.pb.H) == double_curve_bidegree(f.r.d1(), f.r.d2()));
    CHECK(try_divide(f.pb.h, f.pb.H).has_value());
  }
}

TEST_CASE("pullback rejects a W of the wrong degree") {
  const auto& f = fixture(1, 3);
  CHECK_THROWS_AS(pullback_singular_image(f.r, *f.scene.B), GoodnessError);
}

TEST_CASE("pullback rejects factor lists without the double-curve bidegree") {
  const auto& f = fixture(1, 3);
  try {
    pullback_singular_image(f.r, *f.scene.W, {f.pb.h});
    FAIL("expected GoodnessError");
  } catch (const GoodnessError& e) {
    CHECK(e.invariant() == "lift.H");
  }
  CHECK_THROWS_AS(pullback_singular_image(f.r, *f.scene.W, {f.pb.H * f.pb.H}), PreconditionError);
}

TEST_CASE("prefactored pullback gives the same double curve") {
  const auto& f = fixture(2, 2);
  std::vector<MPoly> parts;
  for (const auto& p : factor(f.pb.h, 1)) parts.push_back(p.factor);
  CHECK(pullback_singular_image(f.r, *f.scene.W, parts).H.normalized() == f.pb.H.normalized());
}

TEST_CASE("pointwise mates form an involution on H") {
  for (auto [d1, d2] : {std::pair{1, 3}, std::pair{2, 2}}) {
    const auto& f = fixture(d1, d2);
    int checked = 0;
    for (int t0 : {2, -3, 5}) {
      for (const auto& p : fiber_points(f.pb.H, Rat(t0))) {
        const auto mate = pointwise_mate(f.r, f.pb.H, p.minpoly, p.coords[0], p.coords[1]);
        if (!mate) continue;
        const Ext K(p.minpoly);
        CHECK(K.is_zero(evaluate_at(f.pb.H, AlgCluster{p.minpoly, {mate->first, mate->second}})));
        CHECK_FALSE((K.is_zero(mate->first - p.coords[0]) && K.is_zero(mate->second - p.coords[1])));
        const auto back = pointwise_mate(f.r, f.pb.H, p.minpoly, mate->first, mate->second);
        REQUIRE(back);
        CHECK(K.is_zero(back->first - p.coords[0]));
        CHECK(K.is_zero(back->second - p.coords[1]));
        // Both points map to the same point of P^2.
        std::vector<UPoly> a, b;
        for (int i = 0; i < 3; ++i) {
          a.push_back(evaluate_at(f.r.component(i), p));
          b.push_back(evaluate_at(f.r.component(i), AlgCluster{p.minpoly, {mate->first, mate->second}}));
        }
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) CHECK(K.is_zero(K.mul(a[i], b[j]) - K.mul(a[j], b[i])));
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("symbolic mates agree with pointwise mates") {
  const auto& f = fixture(1, 3);
  const auto mates = mate_functions(f.r, f.pb.H);
  int checked = 0;
  for (int t0 : {2, 7}) {
    for (const auto& p : fiber_points(f.pb.H, Rat(t0))) {
      const auto mate = pointwise_mate(f.r, f.pb.H, p.minpoly, p.coords[0], p.coords[1]);
      if (!mate) continue;
      const Ext K(p.minpoly);
      if (K.is_zero(evaluate_at(mates.U.den, p)) || K.is_zero(evaluate_at(mates.V.den, p))) continue;
      CHECK(K.is_zero(value(mates.U, p) - mate->first));
      CHECK(K.is_zero(value(mates.V, p) - mate->second));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("mate collapse keeps the planar map and verifies") {
  for (auto [d1, d2] : {std::pair{1, 3}, std::pair{2, 2}}) {
    const auto& f = fixture(d1, d2);
    const auto sym = collapse_mates(f.r, f.pb.H, mate_functions(f.r, f.pb.H));
    const auto pw = collapse_mates_pointwise(f.r, f.pb.H, 1);
    CHECK(sym.scroll.planar() == f.r);
    CHECK(pw.scroll.planar() == f.r);
    check_verified(f.scene, sym);
    check_verified(f.scene, pw);
  }
}

TEST_CASE("pinch points give the lift and agree with the mates on the silhouette") {
  for (auto [d1, d2] : {std::pair{1, 3}, std::pair{2, 2}}) {
    const auto& f = fixture(d1, d2);
    const auto S = use_pinch_points(f.r, f.pb, f.scene.pinch_images);
    CHECK(S.scroll.planar() == f.r);
    check_verified(f.scene, S);
    PinchOptions par;
    par.jobs = 2;
    CHECK(use_pinch_points(f.r, f.pb, f.scene.pinch_images, par).scroll == S.scroll);
  }
}

TEST_CASE("pinch preimages lie on H") {
  const auto& f = fixture(1, 3);
  for (const auto& X : f.scene.pinch_images) {
    const auto pre = pinch_preimage(f.r, X);
    REQUIRE(pre);
    const Ext K(X.minpoly);
    CHECK(K.is_zero(evaluate_at(f.pb.H, AlgCluster{X.minpoly, {pre->first, pre->second}})));
  }
}

TEST_CASE("too few pinch points leave a larger solution space") {
  const auto& f = fixture(1, 3);
  PinchOptions opts;
  opts.count = 1;
  CHECK_THROWS_AS(use_pinch_points(f.r, f.pb, f.scene.pinch_images, opts), InvariantError);
}

TEST_CASE("full reconstruction with both strategies") {
  const auto& f = fixture(2, 2);
  Options opts;
  for (auto st : {Strategy::mates, Strategy::pinch}) {
    opts.strategy = st;
    const auto S = reconstruct_rat_ruled_surface(*f.scene.B, *f.scene.W, f.scene.smooth_point, opts);
    check_verified(f.scene, S);
  }
  opts.strategy = Strategy::pinch;
  opts.pinch_images = f.scene.pinch_images;
  check_verified(f.scene, reconstruct_rat_ruled_surface(*f.scene.B, *f.scene.W, f.scene.smooth_point, opts));
}

TEST_CASE("perturbed fourth component is rejected by verify") {
  const auto& f = fixture(1, 3);
  const auto S = use_pinch_points(f.r, f.pb, f.scene.pinch_images);
  const auto bad = f.r.extended(S.scroll.q1()[3] + UPoly(Rat(1)), S.scroll.q2()[3] + UPoly::x(2));
  CHECK_FALSE(oracle::verify_reconstruction(f.scene, bad).ok());
}

TEST_CASE("surface parametrizations must span P^3") {
  const auto& f = fixture(1, 3);
  const auto dep = f.r.extended(f.r.q1()[0], f.r.q2()[0]);
  CHECK_THROWS(SurfaceParam(dep));
}

TEST_CASE("strategy names") {
  CHECK(strategy_from_string(to_string(Strategy::mates)) == Strategy::mates);
  CHECK(strategy_from_string(to_string(Strategy::pinch)) == Strategy::pinch);
  CHECK_THROWS_AS(strategy_from_string("random"), ParseError);
}
