#pragma once

#include <stdexcept>
#include <string>

namespace scrollrec {

/// Base of every error raised by the library. The message always names the
/// violated invariant first, e.g. "plucker.kappa: expected 6 cusps, found 5".
class Error : public std::runtime_error {
 public:
  Error(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// A precondition of an operation does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input violates the good-ness hypotheses (bad silhouette, special
/// projection, wrong degrees). Maps to CLI exit code 2.
class GoodnessError : public Error {
 public:
  using Error::Error;
};

/// An internal assertion failed (kernel dimension != 4, certificate failure).
/// Maps to CLI exit code 3.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Maps to CLI exit code 4.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A randomized step hit an unlucky choice; callers resample and retry.
class RetryError : public Error {
 public:
  using Error::Error;
};

}  // namespace scrollrec
