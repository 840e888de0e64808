#include <doctest.h>

#include "properties.hpp"

using namespace scrollrec::props;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr int kCases = 100;

void check(const SuiteResult& r) {
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases >= kCases);
  CHECK(r.ok());
}

}  // namespace

TEST_CASE("resultant multiplicativity") { check(resultant_multiplicativity(kSeed, kCases)); }
TEST_CASE("squarefree reassembly") { check(squarefree_reassembly(kSeed + 1, kCases)); }
TEST_CASE("factor certificates") { check(factor_certificates(kSeed + 2, kCases)); }
TEST_CASE("mu-basis wedge and degree sum") { check(mu_basis_wedge(kSeed + 3, kCases)); }
TEST_CASE("conic mu-basis") { check(conic_mu_basis(kSeed + 4, kCases)); }
TEST_CASE("parametrization certificate") { check(parametrization_certificate(kSeed + 5, kCases)); }
TEST_CASE("mate involution mod H") { check(mate_involution(kSeed + 6, kCases)); }
TEST_CASE("Pluecker identities on generated silhouettes") { check(plucker_identities(kSeed + 7, kCases)); }
TEST_CASE("nullspace exactness") { check(nullspace_exactness(kSeed + 8, kCases)); }
