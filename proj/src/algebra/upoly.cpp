#include "scrollrec/algebra/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "scrollrec/algebra/modular.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rat& constant) {
  if (constant != 0) c_.push_back(constant);
}

UPoly UPoly::x(int power) {
  std::vector<Rat> c(power + 1, Rat(0));
  c[power] = 1;
  return UPoly(std::move(c));
}

UPoly UPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= s;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
  Rat tmp;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
      r[i + j] += tmp;
    }
  }
  return UPoly(std::move(r));
}

Rat UPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly result(Rat(1)), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UPoly(*it);
  return acc;
}

UPoly UPoly::shift(const Rat& a) const { return compose(UPoly(std::vector<Rat>{a, Rat(1)})); }

UPoly UPoly::shift_up(int k) const {
  if (is_zero()) return *this;
  std::vector<Rat> r(k, Rat(0));
  r.insert(r.end(), c_.begin(), c_.end());
  return UPoly(std::move(r));
}

UPoly UPoly::truncate(int n) const {
  if (static_cast<int>(c_.size()) <= n) return *this;
  return UPoly(std::vector<Rat>(c_.begin(), c_.begin() + std::max(n, 0)));
}

UPoly UPoly::reverse(int deg) const {
  if (degree() > deg) throw PreconditionError("upoly.reverse", "formal degree below actual degree");
  std::vector<Rat> r(deg + 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rat(1 / lc());
}

UPoly UPoly::primitive() const {
  if (is_zero()) return *this;
  Rat c = content_of(c_);
  if (lc() < 0) c = -c;
  return *this * Rat(1 / c);
}

int UPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& v = c_[i];
    if (v == 0) continue;
    Rat mag = abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw PreconditionError("upoly.divmod", "division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rat> q(a.degree() - db + 1, Rat(0));
  const Rat inv = 1 / b.lc();
  Rat tmp;
  for (int k = a.degree() - db; k >= 0; --k) {
    if (r[k + db] == 0) continue;
    Rat c = r[k + db] * inv;
    q[k] = c;
    for (int j = 0; j <= db; ++j) {
      mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), b.coeffs()[j].get_mpq_t());
      r[k + j] -= tmp;
    }
  }
  r.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly divide_exact(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InvariantError("upoly.exact_division", "nonzero remainder");
  return q;
}

namespace {

UPoly euclid_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = (a % b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Int> integer_coeffs(const UPoly& p) {
  UPoly q = p.primitive();
  std::vector<Int> out;
  out.reserve(q.coeffs().size());
  for (const auto& c : q.coeffs()) out.push_back(c.get_num());
  return out;
}

bool divides(const UPoly& d, const UPoly& a) { return (a % d).is_zero(); }

UPoly modular_gcd(const UPoly& a, const UPoly& b) {
  std::vector<Int> A = integer_coeffs(a), B = integer_coeffs(b);
  Int gamma;
  mpz_gcd(gamma.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<Int> acc;
  Int modulus = 1;
  std::vector<Int> last_candidate;
  for (int k = 0; k < 4000; ++k) {
    const modp::Field F{modp::large_prime(k)};
    if (F.reduce(A.back()) == 0 || F.reduce(B.back()) == 0) continue;
    modp::Poly g = modp::gcd(F, modp::from_ints(F, A), modp::from_ints(F, B));
    const int d = modp::degree(g);
    if (d == 0) return UPoly(Rat(1));
    if (d > best) continue;
    g = modp::scale(F, g, F.reduce(gamma));
    if (d < best) {
      best = d;
      acc.assign(d + 1, Int(0));
      for (int i = 0; i <= d; ++i) acc[i] = static_cast<unsigned long>(i < static_cast<int>(g.size()) ? g[i] : 0);
      modulus = static_cast<unsigned long>(F.p);
      last_candidate.clear();
      continue;
    }
    // CRT: acc mod modulus and g mod p.
    Int p(static_cast<unsigned long>(F.p));
    Int inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
    for (int i = 0; i <= d; ++i) {
      const unsigned long gi = i < static_cast<int>(g.size()) ? static_cast<unsigned long>(g[i]) : 0UL;
      Int diff = Int(gi) - acc[i];
      Int t = diff * inv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
      acc[i] += modulus * t;
    }
    modulus *= p;
    std::vector<Int> cand(d + 1);
    Int half = modulus / 2;
    for (int i = 0; i <= d; ++i) cand[i] = acc[i] > half ? Int(acc[i] - modulus) : acc[i];
    if (cand == last_candidate) {
      std::vector<Rat> rc;
      rc.reserve(cand.size());
      for (auto& z : cand) rc.emplace_back(z);
      UPoly G = UPoly(std::move(rc)).monic();
      if (divides(G, a) && divides(G, b)) return G;
    }
    last_candidate = std::move(cand);
  }
  return euclid_gcd(a, b);
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UPoly(Rat(1));
  if (std::min(a.degree(), b.degree()) <= 2) return euclid_gcd(a.primitive(), b.primitive());
  return modular_gcd(a, b);
}

XGcd xgcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b, s0(Rat(1)), s1, t0, t1(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
  const Rat inv = 1 / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  XGcd x = xgcd(a % m, m);
  if (x.g.degree() != 0) throw InvariantError("upoly.inverse_mod", "element not invertible modulo m");
  return x.s % m;
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a) {
  if (a.is_zero()) throw PreconditionError("upoly.squarefree", "zero input");
  std::vector<std::pair<UPoly, int>> out;
  if (a.degree() == 0) return out;
  UPoly f = a.monic();
  UPoly fp = f.derivative();
  UPoly g = gcd(f, fp);
  UPoly b = f / g;
  UPoly c = fp / g;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly ai = gcd(b, d);
    b = b / ai;
    c = d / ai;
    d = c - b.derivative();
    if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
    ++i;
  }
  return out;
}

Rat resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rat r = 1;
    for (int i = 0; i < m; ++i) r *= b.lc();
    return r;
  }
  if (m == 0) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= a.lc();
    return r;
  }
  UPoly r = a % b;
  if (r.is_zero()) return Rat(0);
  const int k = r.degree();
  Rat factor = ((m * n) % 2 == 0) ? Rat(1) : Rat(-1);
  for (int i = 0; i < m - k; ++i) factor *= b.lc();
  return factor * resultant(b, r);
}

UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rat> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly acc;
  for (std::size_t k = n; k-- > 0;) {
    acc = acc * UPoly(std::vector<Rat>{-xs[k], Rat(1)}) + UPoly(dd[k]);
  }
  return acc;
}

}  // namespace scrollrec::algebra
