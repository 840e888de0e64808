#include "scrollrec/algebra/rat.hpp"

#include <cctype>

#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("rat.syntax", "not a rational number: '" + std::string(text) + "'");
  Int n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("rat.denominator", "zero denominator in '" + std::string(text) + "'");
  Rat r(n, d);
  r.canonicalize();
  return negative ? Rat(-r) : r;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

Int common_denominator(const std::vector<Rat>& values) {
  Int l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Rat content_of(const std::vector<Rat>& values) {
  Int g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  if (g == 0) return Rat(0);
  return Rat(g, common_denominator(values));
}

}  // namespace scrollrec::algebra
