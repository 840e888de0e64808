#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scrollrec::props {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return failures == 0; }
};

SuiteResult resultant_multiplicativity(std::uint64_t seed, int cases);
SuiteResult squarefree_reassembly(std::uint64_t seed, int cases);
SuiteResult factor_certificates(std::uint64_t seed, int cases);
SuiteResult mu_basis_wedge(std::uint64_t seed, int cases);
SuiteResult conic_mu_basis(std::uint64_t seed, int cases);
SuiteResult parametrization_certificate(std::uint64_t seed, int cases);
SuiteResult mate_involution(std::uint64_t seed, int cases);
SuiteResult plucker_identities(std::uint64_t seed, int cases);
SuiteResult nullspace_exactness(std::uint64_t seed, int cases);

std::vector<SuiteResult> run_all(std::uint64_t seed, int cases);

}  // namespace scrollrec::props
