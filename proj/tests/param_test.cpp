#include <doctest.h>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/param/param.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;
using namespace scrollrec::curves;
using namespace scrollrec::param;

namespace {

MPoly T(const char* s) { return MPoly::parse(param_ring(), s); }

// Cremona image of a conic tangent to x2 = 0, moved by a fixed frame: two
// nodes and one cusp. Returns the curve and a rational point on it.
std::pair<PlaneCurve, std::vector<Rat>> cremona_quartic() {
  const auto& R = plane_ring();
  const MPoly q = MPoly::parse(R, "(x0 - x1)^2 + x2*(x0 + x1 + x2)");
  const MPoly quartic =
      q.compose({MPoly::parse(R, "x1*x2"), MPoly::parse(R, "x0*x2"), MPoly::parse(R, "x0*x1")});
  const Mat M = {{1, 1, 0}, {0, 1, 1}, {1, 0, 2}};
  const PlaneCurve C(substitute_linear(quartic, M, R));
  const Vec P = mul_vec(inverse(M), Vec{2, 6, -3});
  return {C, P};
}

}  // namespace

TEST_CASE("adjoints of a nodal cubic are the lines through the node") {
  const PlaneCurve C = PlaneCurve::parse("x1^2*x2 - x0^2*(x0 + x2)");
  const auto adj = adjoint_basis(C, singular_inventory(C));
  REQUIRE(adj.size() == 2);
  for (const auto& a : adj) {
    CHECK(a.degree() == 1);
    CHECK(a.evaluate({0, 0, 1}) == 0);
  }
}

TEST_CASE("parametrize cuspidal cubic") {
  const PlaneCurve C = PlaneCurve::parse("x1^2*x2 - x0^3");
  const ParamCurve psi = parametrize(C, {1, 1, 1});
  CHECK(psi.degree() == 3);
  CHECK(psi.pullback(C.equation()).is_zero());
}

TEST_CASE("parametrize nodal cubic") {
  const PlaneCurve C = PlaneCurve::parse("x1^2*x2 - x0^2*(x0 + x2)");
  const ParamCurve psi = parametrize(C, {3, 6, 1});
  CHECK(psi.degree() == 3);
  CHECK(psi.pullback(C.equation()).is_zero());
}

TEST_CASE("parametrize a conic and a quartic") {
  const PlaneCurve conic = PlaneCurve::parse("x0^2 + x1^2 - x2^2");
  const ParamCurve pc = parametrize(conic, {3, 4, 5});
  CHECK(pc.degree() == 2);
  CHECK(pc.pullback(conic.equation()).is_zero());

  auto [C, P] = cremona_quartic();
  const ParamCurve psi = parametrize(C, P);
  CHECK(psi.degree() == 4);
  CHECK(psi.pullback(C.equation()).is_zero());
  CHECK_THROWS_AS(parametrize(C, {1, 2, 3}), PreconditionError);
}

TEST_CASE("dual parametrization") {
  const ParamCurve conic({T("t1^2"), T("t0*t1"), T("t0^2")});
  const ParamCurve dual = dual_parametrization(conic);
  CHECK(dual == ParamCurve({T("t0^2"), T("-2*t0*t1"), T("t1^2")}));
  CHECK_THROWS_AS(dual_parametrization(ParamCurve({T("t1"), T("t0"), T("0")})), PreconditionError);
  // Biduality.
  CHECK(dual_parametrization(dual) == conic);

  auto [C, P] = cremona_quartic();
  const ParamCurve psi = parametrize(C, P);
  const ParamCurve d = dual_parametrization(psi);
  // Class of a quartic with two nodes and a cusp: 12 - 4 - 3 = 5.
  CHECK(d.degree() == 5);
  const ParamCurve back = dual_parametrization(d);
  CHECK(back.pullback(C.equation()).is_zero());
}

TEST_CASE("mu-basis of the conic") {
  const ParamCurve conic({T("t1^2"), T("t0*t1"), T("t0^2")});
  const MuBasis mb = mu_basis(conic);
  CHECK(mb.d1 == 1);
  CHECK(mb.d2 == 1);
  const auto w = cross(mb.q1, mb.q2);
  CHECK((w[1] * UPoly(Rat(1))).degree() == 1);
}

TEST_CASE("mu-degrees are invariant under reparametrization") {
  auto [C, P] = cremona_quartic();
  const ParamCurve d = dual_parametrization(parametrize(C, P));
  const MuBasis a = mu_basis(d);
  CHECK(a.d1 + a.d2 == 5);
  std::vector<MPoly> shifted;
  for (const auto& c : d.components())
    shifted.push_back(c.compose({T("t0 + t1"), T("t1")}));
  const MuBasis b = mu_basis(ParamCurve(shifted));
  CHECK(a.d1 == b.d1);
  CHECK(a.d2 == b.d2);
}
