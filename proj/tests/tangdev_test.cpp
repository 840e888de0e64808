#include <doctest.h>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/oracle/oracle.hpp"
#include "scrollrec/tangdev/tangdev.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;
using namespace scrollrec::tangdev;

namespace {

UPoly poly(const std::string& text) { return MPoly::parse(line_ring(), text).to_upoly(0); }

ParamCurve affine_curve(const std::vector<std::string>& parts) {
  std::vector<UPoly> p;
  for (const auto& s : parts) p.push_back(poly(s));
  return ParamCurve::from_affine(p);
}

AlgCluster at(const Rat& t) { return {UPoly::x() - UPoly(t), {UPoly(t)}}; }

const oracle::Scene& quartic_scene() {
  static const oracle::Scene sc = oracle::generate_developable(4, 2);
  return sc;
}

}  // namespace

TEST_CASE("profile of monomial curves") {
  const auto cubic = affine_curve({"1", "t", "t^2", "t^3"});
  auto p = special_point_profile(cubic, at(Rat(0)));
  CHECK(p.orders == std::vector<int>{0, 1, 2, 3});
  CHECK(p.multiplicity == 0);

  const auto quartic = affine_curve({"1", "t", "t^2", "t^4"});
  p = special_point_profile(quartic, at(Rat(0)));
  CHECK(p.orders == std::vector<int>{0, 1, 2, 4});
  CHECK(p.multiplicity == 1);
  CHECK(special_point_profile(quartic, at(Rat(3))).orders == std::vector<int>{0, 1, 2, 3});

  const auto flat = affine_curve({"1", "t", "t^3", "t^5"});
  CHECK(special_point_profile(flat, at(Rat(0))).orders == std::vector<int>{0, 1, 3, 5});
}

TEST_CASE("profile over a quadratic cluster") {
  // The third derivative of the last component is 60 (t^2 - 2).
  const auto c = affine_curve({"1", "t", "t^2", "t^5 - 20*t^3"});
  const AlgCluster roots{poly("t^2 - 2"), {UPoly::x()}};
  CHECK(special_point_profile(c, roots).orders == std::vector<int>{0, 1, 2, 4});
  CHECK(special_point_profile(c, at(Rat(1))).orders == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("special parameters of a monomial curve") {
  const auto c = affine_curve({"1", "t", "t^2", "t^4"});
  int total = 0;
  for (const auto& cl : special_parameters(c)) {
    const auto p = special_point_profile(c, cl);
    CHECK(p.multiplicity >= 1);
    total += cl.degree() * p.multiplicity;
  }
  CHECK(total <= 4 * (c.degree() - 3));
}

TEST_CASE("determinant form vanishes on a repeated row") {
  const auto& sc = quartic_scene();
  const auto& H = *sc.curve;
  const auto form = cusp_matrix_form(H[0], H[1], H[2]);
  CHECK(form.A.size() == 5);
  for (int i = 0; i < 3; ++i) CHECK(form.evaluate(H[i]).is_zero());
  CHECK(form.evaluate(H[3]) == third_derivative_determinant(H.components()));
  CHECK_FALSE(form.evaluate(H[3]).is_zero());
}

TEST_CASE("determinant form preconditions") {
  const auto& R = param_ring();
  const auto f = MPoly::parse(R, "t0^4");
  const auto g = MPoly::parse(R, "t0^3*t1");
  CHECK_THROWS_AS(cusp_matrix_form(f, g, f), PreconditionError);
  CHECK_THROWS_AS(cusp_matrix_form(f, g, MPoly::parse(R, "t1^3")), PreconditionError);
  CHECK_THROWS_AS(cusp_matrix_form(MPoly::parse(R, "t0^2"), MPoly::parse(R, "t0*t1"), MPoly::parse(R, "t1^2")),
                  PreconditionError);
}

TEST_CASE("scene curve has 4(d-3) special points of profile (0,1,2,4)") {
  const auto& H = *quartic_scene().curve;
  int total = 0;
  for (const auto& cl : special_parameters(H)) {
    const auto p = special_point_profile(H, cl);
    CHECK(p.orders == std::vector<int>{0, 1, 2, 4});
    total += cl.degree() * p.multiplicity;
  }
  CHECK(total == 4);
}

TEST_CASE("twisted cubic: any solution is accepted") {
  const auto sc = oracle::generate_developable(3, 1);
  CHECK(sc.C->degree() == 3);
  const auto H = reconstruct_tangent_developable(*sc.C, std::nullopt, sc.smooth_point, 1);
  CHECK(H.degree() == 3);
  CHECK(special_parameters(H).empty());
  const auto rep = oracle::verify_reconstruction(sc, H);
  INFO(rep.str());
  CHECK(rep.ok());
}

TEST_CASE("quartic round trip") {
  const auto& sc = quartic_scene();
  const auto H = reconstruct_tangent_developable(*sc.C, sc.D, sc.smooth_point, 1);
  CHECK(H.degree() == 4);
  int total = 0;
  for (const auto& cl : special_parameters(H)) {
    const auto p = special_point_profile(H, cl);
    CHECK(p.orders == std::vector<int>{0, 1, 2, 4});
    total += cl.degree();
  }
  CHECK(total == 4);
  const auto rep = oracle::verify_reconstruction(sc, H);
  INFO(rep.str());
  CHECK(rep.ok());

  // A fourth component outside the solution space is caught by verify.
  auto comps = H.components();
  comps[3] += MPoly::parse(param_ring(), "t0^3*t1");
  CHECK_FALSE(oracle::verify_reconstruction(sc, ParamCurve(comps)).ok());
}

TEST_CASE("reconstruction input checks") {
  const auto& sc = quartic_scene();
  CHECK_THROWS_AS(reconstruct_tangent_developable(*sc.C, std::nullopt, sc.smooth_point, 1), GoodnessError);
  CHECK_THROWS_AS(reconstruct_tangent_developable(*sc.C, sc.C, sc.smooth_point, 1), GoodnessError);
}
