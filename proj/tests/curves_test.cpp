#include <doctest.h>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/curves/curves.hpp"
#include "scrollrec/errors.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;
using namespace scrollrec::curves;

TEST_CASE("cuspidal cubic") {
  const auto inv = singular_inventory(PlaneCurve::parse("x1^2*x2 - x0^3"));
  CHECK(inv.node_count == 0);
  CHECK(inv.cusp_count == 1);
  REQUIRE(inv.cusps.size() == 1);
  CHECK(same_points(inv.cusps[0], AlgCluster::rational({0, 0, 1})));
}

TEST_CASE("nodal cubic") {
  const auto inv = singular_inventory(PlaneCurve::parse("x1^2*x2 - x0^2*(x0 + x2)"));
  CHECK(inv.node_count == 1);
  CHECK(inv.cusp_count == 0);
  REQUIRE(inv.nodes.size() == 1);
  CHECK(same_points(inv.nodes[0], AlgCluster::rational({0, 0, 1})));
}

TEST_CASE("quadratic transform of a conic") {
  // The Cremona image of a conic tangent to one side of the coordinate
  // triangle is a quartic with two nodes and one cusp.
  const MPoly q = MPoly::parse(plane_ring(), "(x0 - x1)^2 + x2*(x0 + x1 + x2)");
  const MPoly quartic = q.compose({MPoly::parse(plane_ring(), "x1*x2"), MPoly::parse(plane_ring(), "x0*x2"),
                                   MPoly::parse(plane_ring(), "x0*x1")});
  const Mat M = {{1, 1, 0}, {0, 1, 1}, {1, 0, 2}};
  const PlaneCurve C(substitute_linear(quartic, M, plane_ring()));
  const auto a = singular_inventory(C, 1);
  CHECK(a.node_count == 2);
  CHECK(a.cusp_count == 1);
  const auto b = singular_inventory(C, 99);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(str(a.nodes[i]) == str(b.nodes[i]));
  REQUIRE(b.cusps.size() == 1);
  CHECK(str(a.cusps[0]) == str(b.cusps[0]));
}

TEST_CASE("triple point is rejected") {
  CHECK_THROWS_AS(singular_inventory(PlaneCurve::parse("(x0^2 + x1^2)^2 - 3*x0^2*x1*x2 + x1^3*x2")), GoodnessError);
}

TEST_CASE("tacnode is rejected") {
  CHECK_THROWS_AS(singular_inventory(PlaneCurve::parse("x1^2*x2^2 - x0^4 - x1^4")), GoodnessError);
}

TEST_CASE("intersections") {
  auto lines = intersect(PlaneCurve::parse("x0 - x1"), PlaneCurve::parse("x0 + x1 - 2*x2"));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].multiplicity == 1);
  CHECK(same_points(lines[0].points, AlgCluster::rational({1, 1, 1})));
  CHECK(transversal_filter(PlaneCurve::parse("x0 - x1"), PlaneCurve::parse("x0 + x1 - 2*x2"), lines).size() == 1);

  const PlaneCurve conic = PlaneCurve::parse("x0^2 + x1^2 - x2^2");
  const PlaneCurve tangent = PlaneCurve::parse("x1 - x2");
  auto t = intersect(conic, tangent);
  REQUIRE(t.size() == 1);
  CHECK(t[0].points.degree() == 1);
  CHECK(t[0].multiplicity == 2);
  CHECK(transversal_filter(conic, tangent, t).empty());

  auto c = intersect(conic, PlaneCurve::parse("x0^2 - 2*x1^2 + x0*x2"));
  int total = 0;
  for (auto& i : c) total += i.points.degree() * i.multiplicity;
  CHECK(total == 4);

  CHECK_THROWS_AS(intersect(PlaneCurve::parse("x0*x1"), PlaneCurve::parse("x0*x2")), PreconditionError);
}

TEST_CASE("plucker audit arithmetic") {
  CHECK(plucker_audit(6, 4, 6, 4).ok());
  CHECK(plucker_audit(8, 12, 9, 5).ok());
  const Report bad = plucker_audit(6, 5, 5, 4);
  CHECK_FALSE(bad.ok());
  bool kappa_failed = false;
  for (auto& c : bad.checks)
    if (c.name == "plucker.kappa") kappa_failed = !c.ok;
  CHECK(kappa_failed);
}
