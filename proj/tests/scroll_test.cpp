#include <doctest.h>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/oracle/oracle.hpp"
#include "scrollrec/scroll/scroll.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;
using namespace scrollrec::scroll;

namespace {

UPoly poly(const std::string& text) { return MPoly::parse(line_ring(), text).to_upoly(0); }

std::vector<UPoly> polys(const std::vector<std::string>& parts) {
  std::vector<UPoly> out;
  for (const auto& p : parts) out.push_back(poly(p));
  return out;
}

}  // namespace

TEST_CASE("scroll map shape and normalization") {
  const ScrollMap r(polys({"2", "0", "2*t"}), polys({"t^3", "1", "0"}));
  CHECK(r.d1() == 1);
  CHECK(r.d2() == 3);
  CHECK(r.degree() == 4);
  CHECK(r.ambient() == 3);
  CHECK(r.q1() == polys({"1", "0", "t"}));
  CHECK(r.component(0) == MPoly::parse(scroll_ring(), "t^3 + s"));
  const auto S = r.extended(poly("t^2"), poly("t"));
  CHECK(S.ambient() == 4);
  CHECK(S.planar() == r);
  CHECK_THROWS_AS(S.extended(poly("1"), poly("1")), PreconditionError);
}

TEST_CASE("scroll maps reject dependent or malformed vectors") {
  // q1(0) and q2(0) are proportional.
  CHECK_THROWS_AS(ScrollMap(polys({"1", "0", "0"}), polys({"1", "t", "t^2"})), PreconditionError);
  CHECK_THROWS_AS(ScrollMap(polys({"1", "0"}), polys({"t", "1"})), PreconditionError);
  CHECK_THROWS_AS(ScrollMap(polys({"0", "0", "0"}), polys({"t", "1", "0"})), PreconditionError);
}

TEST_CASE("planar implicitization of a conic and a nodal cubic") {
  CHECK(implicitize_planar(polys({"1", "t", "t^2"})).equation() == MPoly::parse(plane_ring(), "x1^2 - x0*x2").normalized());
  // (1, t^2 - 1, t^3 - t) traces y^2 = x^2 (x + 1) with x = x1/x0, y = x2/x0.
  const auto C = implicitize_planar(polys({"1", "t^2 - 1", "t^3 - t"}));
  CHECK(C.equation() == MPoly::parse(plane_ring(), "x1^3 + x0*x1^2 - x0*x2^2").normalized());
}

TEST_CASE("branch curve lies under the critical points") {
  const auto sc = oracle::generate_ruled(1, 3, 11);
  const auto r = sc.surface.planar();
  const auto B = branch_curve(r);
  CHECK(B.degree() == 6);
  const auto p = branch_parametrization(r);
  std::vector<MPoly> images;
  for (const auto& c : p) images.push_back(MPoly::from_upoly(line_ring(), c, 0));
  CHECK(B.equation().compose(images).is_zero());
}

TEST_CASE("surface degree from the silhouette degree") {
  CHECK(surface_degree_from_silhouette(6) == 4);
  CHECK(surface_degree_from_silhouette(8) == 5);
  CHECK_THROWS_AS(surface_degree_from_silhouette(7), GoodnessError);
}

TEST_CASE("scroll reconstruction recovers the type") {
  for (auto [d1, d2] : {std::pair{1, 3}, std::pair{2, 2}}) {
    const auto sc = oracle::generate_ruled(d1, d2, 5);
    const auto r = reconstruct_rational_scroll(*sc.B, sc.smooth_point, 1);
    CHECK(r.d1() == d1);
    CHECK(r.d2() == d2);
    CHECK(branch_curve(r) == *sc.B);
  }
}

TEST_CASE("scroll reconstruction needs a smooth point of B") {
  const auto sc = oracle::generate_ruled(1, 3, 11);
  CHECK_THROWS(reconstruct_rational_scroll(*sc.B, {Rat(1), Rat(2), Rat(3)}, 1));
  const auto inv = curves::singular_inventory(*sc.B);
  CHECK(reconstruct_rational_scroll(*sc.B, inv, sc.smooth_point, 1).degree() == 4);
}
