#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scrollrec/algebra/rat.hpp"

namespace scrollrec::algebra {

class UPoly;

/// Maximum number of variables of a ring. Exponent vectors are packed into
/// 128 bits together with the total degree.
inline constexpr int kMaxVars = 7;

/// Exponent vector packed as eight 16-bit fields: field 0 holds the total
/// degree, field 1 + i the exponent of variable i. Comparing the packed words
/// lexicographically is exactly graded-lex order with x0 > x1 > ...
struct Monomial {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  static Monomial of_var(int var, int exp = 1);
  static Monomial from_exponents(const std::vector<int>& exps);

  int degree() const { return static_cast<int>(hi >> 48); }
  int exp(int var) const;
  std::vector<int> exponents(int nvars) const;
  Monomial with_exp(int var, int exp) const;

  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& o) const { return {hi + o.hi, lo + o.lo}; }
  /// Caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const { return {hi - o.hi, lo - o.lo}; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.hi <=> b.hi; c != 0) return c;
    return a.lo <=> b.lo;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    return static_cast<std::size_t>(m.hi * 0x9e3779b97f4a7c15ULL ^ (m.lo + 0x7f4a7c159e3779b9ULL + (m.hi << 6)));
  }
};

/// Ordered list of variable names. Polynomials may only be combined when
/// their rings have identical names.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  static std::shared_ptr<const Ring> make(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  /// -1 when absent.
  int index_of(std::string_view name) const;
  /// Throws PreconditionError when absent.
  int require(std::string_view name) const;

  bool operator==(const Ring& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

struct Term {
  Monomial mono;
  Rat coeff;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept sorted
/// in descending graded-lex order with no zero coefficients.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MPoly(RingPtr ring, const Rat& constant);
  MPoly(RingPtr ring, std::vector<Term> terms);  // normalizes

  static MPoly variable(const RingPtr& ring, int var);
  static MPoly variable(const RingPtr& ring, std::string_view name);
  static MPoly monomial(const RingPtr& ring, const Monomial& m, const Rat& c = Rat(1));

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }
  /// Constant term value (zero if absent). Only meaningful for constants.
  Rat constant_value() const;

  /// Total degree; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
  /// Degree in one variable; -1 for zero.
  int degree(int var) const;
  int min_degree(int var) const;
  bool uses(int var) const;
  std::vector<int> used_vars() const;

  const Rat& lc() const { return terms_.front().coeff; }
  const Monomial& lm() const { return terms_.front().mono; }

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rat& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
  friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly mul_monomial(const Monomial& m, const Rat& c) const;
  MPoly pow(unsigned e) const;
  MPoly diff(int var) const;
  /// Substitute a rational value for one variable (the variable stays in the
  /// ring with exponent zero).
  MPoly eval(int var, const Rat& value) const;
  /// Substitute a polynomial of the same ring for one variable.
  MPoly subs(int var, const MPoly& value) const;
  /// Replace every variable i of this ring by images[i]; the result lives in
  /// the ring of the images.
  MPoly compose(const std::vector<MPoly>& images) const;
  /// Rename into another ring: variable i maps to target index map[i]
  /// (must be >= 0 for every used variable).
  MPoly remap(const RingPtr& target, const std::vector<int>& map) const;
  /// Remap by variable names; every used variable must exist in target.
  MPoly to_ring(const RingPtr& target) const;

  /// Coefficients as polynomial in var, index = power (var removed).
  std::vector<MPoly> coeffs_in(int var) const;
  static MPoly from_coeffs(const RingPtr& ring, const std::vector<MPoly>& coeffs, int var);
  MPoly coeff_of(int var, int power) const;

  bool is_homogeneous() const;
  /// Homogeneous part of the given total degree.
  MPoly homogeneous_part(int deg) const;
  /// Homogenize to the given degree using variable hvar (which must be unused).
  MPoly homogenize(int hvar, int deg) const;

  /// Positive rational such that this/content has coprime integer coefficients.
  Rat content() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient (zero
  /// stays zero). Two polynomials are equal up to a unit iff their normal
  /// forms are equal.
  MPoly normalized() const;
  MPoly monic() const;

  Rat evaluate(const std::vector<Rat>& point) const;

  std::string str() const;
  static MPoly parse(const RingPtr& ring, std::string_view text);

  /// Univariate view; throws if a variable other than var occurs.
  UPoly to_upoly(int var) const;
  static MPoly from_upoly(const RingPtr& ring, const UPoly& p, int var);

 private:
  void check_ring(const MPoly& o) const;
  friend class MPolyBuilder;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Accumulates terms in a hash table; finish() sorts and drops zeros.
class MPolyBuilder {
 public:
  explicit MPolyBuilder(RingPtr ring);
  ~MPolyBuilder();
  MPolyBuilder(const MPolyBuilder&) = delete;
  MPolyBuilder& operator=(const MPolyBuilder&) = delete;
  void add(const Monomial& m, const Rat& c);
  void add_product(const Monomial& m, const Rat& a, const Rat& b);
  void add(const MPoly& p);
  MPoly finish();

 private:
  struct Impl;
  RingPtr ring_;
  std::unique_ptr<Impl> impl_;
};

/// Exact quotient a / b; nullopt when b does not divide a.
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);
/// Exact quotient; throws InvariantError when not exact.
MPoly divide_exact(const MPoly& a, const MPoly& b);

/// True when a = c * b for some nonzero rational c.
bool equal_up_to_unit(const MPoly& a, const MPoly& b);

}  // namespace scrollrec::algebra
