#include "scrollrec/algebra/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

#include "scrollrec/algebra/upoly.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

namespace {

constexpr int kFieldBits = 16;
constexpr std::uint64_t kFieldMask = 0xffff;

int field_get(const Monomial& m, int f) {
  const std::uint64_t w = f < 4 ? m.hi : m.lo;
  return static_cast<int>((w >> ((3 - f % 4) * kFieldBits)) & kFieldMask);
}

void field_set(Monomial& m, int f, int v) {
  std::uint64_t& w = f < 4 ? m.hi : m.lo;
  const int shift = (3 - f % 4) * kFieldBits;
  w = (w & ~(kFieldMask << shift)) | (static_cast<std::uint64_t>(v) << shift);
}

void check_exponent(int e) {
  if (e < 0 || e > 0x7fff) throw PreconditionError("mpoly.exponent", "exponent out of range");
}

}  // namespace

Monomial Monomial::of_var(int var, int exp) {
  check_exponent(exp);
  Monomial m;
  field_set(m, 0, exp);
  field_set(m, 1 + var, exp);
  return m;
}

Monomial Monomial::from_exponents(const std::vector<int>& exps) {
  if (static_cast<int>(exps.size()) > kMaxVars) throw PreconditionError("mpoly.vars", "too many variables");
  Monomial m;
  int total = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    check_exponent(exps[i]);
    field_set(m, 1 + static_cast<int>(i), exps[i]);
    total += exps[i];
  }
  check_exponent(total);
  field_set(m, 0, total);
  return m;
}

int Monomial::exp(int var) const { return field_get(*this, 1 + var); }

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exp(i);
  return e;
}

Monomial Monomial::with_exp(int var, int e) const {
  check_exponent(e);
  Monomial m = *this;
  const int old = exp(var);
  field_set(m, 0, degree() - old + e);
  field_set(m, 1 + var, e);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  for (int f = 1; f < 8; ++f)
    if (field_get(*this, f) > field_get(other, f)) return false;
  return true;
}

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (static_cast<int>(names_.size()) > kMaxVars) throw PreconditionError("ring.size", "too many variables");
}

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

int Ring::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int Ring::require(std::string_view name) const {
  int i = index_of(name);
  if (i < 0) throw PreconditionError("ring.variable", "unknown variable " + std::string(name));
  return i;
}

// ---------------------------------------------------------------------------

struct MPolyBuilder::Impl {
  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  Rat tmp;
};

MPolyBuilder::MPolyBuilder(RingPtr ring) : ring_(std::move(ring)), impl_(std::make_unique<Impl>()) {}
MPolyBuilder::~MPolyBuilder() = default;

void MPolyBuilder::add(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = impl_->acc.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void MPolyBuilder::add_product(const Monomial& m, const Rat& a, const Rat& b) {
  mpq_mul(impl_->tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  auto [it, inserted] = impl_->acc.try_emplace(m, impl_->tmp);
  if (!inserted) it->second += impl_->tmp;
}

void MPolyBuilder::add(const MPoly& p) {
  for (const auto& t : p.terms()) add(t.mono, t.coeff);
}

MPoly MPolyBuilder::finish() {
  MPoly out(ring_);
  out.terms_.reserve(impl_->acc.size());
  for (auto& [m, c] : impl_->acc)
    if (c != 0) out.terms_.push_back({m, std::move(c)});
  impl_->acc.clear();
  std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return out;
}

// ---------------------------------------------------------------------------

MPoly::MPoly(RingPtr ring, const Rat& constant) : ring_(std::move(ring)) {
  if (constant != 0) terms_.push_back({Monomial{}, constant});
}

MPoly::MPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  MPolyBuilder b(ring_);
  for (auto& t : terms) b.add(t.mono, t.coeff);
  *this = b.finish();
}

MPoly MPoly::variable(const RingPtr& ring, int var) {
  if (var < 0 || var >= ring->size()) throw PreconditionError("mpoly.variable", "index out of range");
  return monomial(ring, Monomial::of_var(var), Rat(1));
}

MPoly MPoly::variable(const RingPtr& ring, std::string_view name) { return variable(ring, ring->require(name)); }

MPoly MPoly::monomial(const RingPtr& ring, const Monomial& m, const Rat& c) {
  MPoly p(ring);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  const Term& last = terms_.back();
  return last.mono.degree() == 0 ? last.coeff : Rat(0);
}

int MPoly::degree(int var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exp(var));
  return d;
}

int MPoly::min_degree(int var) const {
  if (terms_.empty()) return -1;
  int d = 0x7fffffff;
  for (const auto& t : terms_) d = std::min(d, t.mono.exp(var));
  return d;
}

bool MPoly::uses(int var) const {
  for (const auto& t : terms_)
    if (t.mono.exp(var) > 0) return true;
  return false;
}

std::vector<int> MPoly::used_vars() const {
  std::vector<int> out;
  if (!ring_) return out;
  for (int v = 0; v < ring_->size(); ++v)
    if (uses(v)) out.push_back(v);
  return out;
}

void MPoly::check_ring(const MPoly& o) const {
  if (!ring_ || !o.ring_ || ring_ == o.ring_) return;
  if (!(*ring_ == *o.ring_)) throw PreconditionError("mpoly.ring", "operands live in different rings");
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

template <bool Subtract>
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, Subtract ? Rat(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rat c = Subtract ? Rat(a[i].coeff - b[j].coeff) : Rat(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& o) {
  check_ring(o);
  if (!ring_) ring_ = o.ring_;
  if (o.terms_.empty()) return *this;
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check_ring(o);
  if (!ring_) ring_ = o.ring_;
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_ring(b);
  RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
  if (a.is_zero() || b.is_zero()) return MPoly(ring);
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  MPolyBuilder builder(ring);
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) builder.add_product(s.mono * t.mono, s.coeff, t.coeff);
  return builder.finish();
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rat& c) const {
  MPoly r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(ring_, Rat(1)), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::diff(int var) const {
  MPoly r(ring_);
  for (const auto& t : terms_) {
    const int e = t.mono.exp(var);
    if (e == 0) continue;
    r.terms_.push_back({t.mono.with_exp(var, e - 1), t.coeff * e});
  }
  // Lowering one exponent by one keeps the relative order.
  return r;
}

MPoly MPoly::eval(int var, const Rat& value) const {
  if (!uses(var)) return *this;
  MPolyBuilder b(ring_);
  std::vector<Rat> powers{Rat(1)};
  for (const auto& t : terms_) {
    const int e = t.mono.exp(var);
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    b.add_product(t.mono.with_exp(var, 0), t.coeff, powers[e]);
  }
  return b.finish();
}

MPoly MPoly::subs(int var, const MPoly& value) const {
  check_ring(value);
  auto cs = coeffs_in(var);
  MPoly acc(ring_);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + *it;
  return acc;
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const {
  if (static_cast<int>(images.size()) != ring_->size())
    throw PreconditionError("mpoly.compose", "image count does not match ring size");
  RingPtr target;
  for (const auto& im : images)
    if (im.ring()) {
      target = im.ring();
      break;
    }
  if (!target) throw PreconditionError("mpoly.compose", "images carry no ring");
  const int n = ring_->size();
  std::vector<std::vector<MPoly>> powers(n);
  for (int v = 0; v < n; ++v) powers[v].push_back(MPoly(target, Rat(1)));
  auto power = [&](int v, int e) -> const MPoly& {
    auto& pv = powers[v];
    while (static_cast<int>(pv.size()) <= e) pv.push_back(pv.back() * images[v]);
    return pv[e];
  };
  MPolyBuilder b(target);
  for (const auto& t : terms_) {
    MPoly prod(target, t.coeff);
    for (int v = 0; v < n; ++v) {
      const int e = t.mono.exp(v);
      if (e) prod = prod * power(v, e);
    }
    b.add(prod);
  }
  return b.finish();
}

MPoly MPoly::remap(const RingPtr& target, const std::vector<int>& map) const {
  MPolyBuilder b(target);
  const int n = ring_ ? ring_->size() : 0;
  for (const auto& t : terms_) {
    std::vector<int> exps(target->size(), 0);
    for (int v = 0; v < n; ++v) {
      const int e = t.mono.exp(v);
      if (!e) continue;
      if (map[v] < 0) throw PreconditionError("mpoly.remap", "used variable has no image");
      exps[map[v]] += e;
    }
    b.add(Monomial::from_exponents(exps), t.coeff);
  }
  return b.finish();
}

MPoly MPoly::to_ring(const RingPtr& target) const {
  if (!ring_) return MPoly(target);
  std::vector<int> map(ring_->size());
  for (int v = 0; v < ring_->size(); ++v) map[v] = target->index_of(ring_->name(v));
  return remap(target, map);
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
  const int d = degree(var);
  std::vector<MPoly> out(std::max(d + 1, 0), MPoly(ring_));
  for (const auto& t : terms_) {
    const int e = t.mono.exp(var);
    out[e].terms_.push_back({t.mono.with_exp(var, 0), t.coeff});
  }
  return out;
}

MPoly MPoly::from_coeffs(const RingPtr& ring, const std::vector<MPoly>& coeffs, int var) {
  MPoly r(ring);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (const auto& t : coeffs[i].terms()) {
      if (t.mono.exp(var) != 0) throw PreconditionError("mpoly.from_coeffs", "coefficient uses the main variable");
      r.terms_.push_back({t.mono.with_exp(var, static_cast<int>(i)), t.coeff});
    }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return r;
}

MPoly MPoly::coeff_of(int var, int power) const {
  MPoly r(ring_);
  for (const auto& t : terms_)
    if (t.mono.exp(var) == power) r.terms_.push_back({t.mono.with_exp(var, 0), t.coeff});
  return r;
}

bool MPoly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != degree()) return false;
  return true;
}

MPoly MPoly::homogeneous_part(int deg) const {
  MPoly r(ring_);
  for (const auto& t : terms_)
    if (t.mono.degree() == deg) r.terms_.push_back(t);
  return r;
}

MPoly MPoly::homogenize(int hvar, int deg) const {
  if (uses(hvar)) throw PreconditionError("mpoly.homogenize", "homogenizing variable already in use");
  if (degree() > deg) throw PreconditionError("mpoly.homogenize", "target degree below total degree");
  MPoly r(ring_);
  for (const auto& t : terms_) r.terms_.push_back({t.mono.with_exp(hvar, deg - t.mono.degree()), t.coeff});
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return r;
}

Rat MPoly::content() const {
  std::vector<Rat> cs;
  cs.reserve(terms_.size());
  for (const auto& t : terms_) cs.push_back(t.coeff);
  return content_of(cs);
}

MPoly MPoly::normalized() const {
  if (is_zero()) return *this;
  Rat c = content();
  if (lc() < 0) c = -c;
  MPoly r = *this;
  r *= Rat(1 / c);
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  MPoly r = *this;
  r *= Rat(1 / lc());
  return r;
}

Rat MPoly::evaluate(const std::vector<Rat>& point) const {
  const int n = ring_ ? ring_->size() : 0;
  if (static_cast<int>(point.size()) < n) throw PreconditionError("mpoly.evaluate", "point has too few coordinates");
  std::vector<std::vector<Rat>> powers(n, std::vector<Rat>{Rat(1)});
  Rat acc = 0;
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (int i = 0; i < n; ++i) {
      const int e = t.mono.exp(i);
      if (!e) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * point[i]);
      v *= pw[e];
    }
    acc += v;
  }
  return acc;
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const Rat mag = abs(t.coeff);
    if (first)
      os << (t.coeff < 0 ? "-" : "");
    else
      os << (t.coeff < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (int v = 0; v < ring_->size(); ++v) {
      const int e = t.mono.exp(v);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      os << mag.get_str();
    else if (mag == 1)
      os << mono;
    else
      os << mag.get_str() << "*" << mono;
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  MPoly run() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial.syntax", what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc(ring_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    MPoly t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        MPoly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rat(1 / d.constant_value());
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly factor() {
    MPoly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoi(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rat v(Int(std::string(s_.substr(start, pos_ - start))));
      return MPoly(ring_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      int idx = ring_->index_of(name);
      if (idx < 0) fail("unknown variable '" + std::string(name) + "'");
      return MPoly::variable(ring_, idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(const RingPtr& ring, std::string_view text) { return Parser(ring, text).run(); }

UPoly MPoly::to_upoly(int var) const {
  std::vector<Rat> c(std::max(degree(var) + 1, 0), Rat(0));
  for (const auto& t : terms_) {
    if (t.mono.degree() != t.mono.exp(var))
      throw PreconditionError("mpoly.to_upoly", "polynomial involves other variables");
    c[t.mono.exp(var)] = t.coeff;
  }
  return UPoly(std::move(c));
}

MPoly MPoly::from_upoly(const RingPtr& ring, const UPoly& p, int var) {
  MPoly r(ring);
  for (int i = p.degree(); i >= 0; --i)
    if (p.coeff(i) != 0) r.terms_.push_back({Monomial::of_var(var, i), p.coeff(i)});
  return r;
}

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw PreconditionError("mpoly.divide", "division by zero");
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return MPoly(ring);
  if (b.size() == 1) {
    const Term& bt = b.terms()[0];
    std::vector<Term> q;
    q.reserve(a.size());
    const Rat inv = 1 / bt.coeff;
    for (const auto& t : a.terms()) {
      if (!bt.mono.divides(t.mono)) return std::nullopt;
      q.push_back({t.mono / bt.mono, t.coeff * inv});
    }
    return MPoly(ring, std::move(q));
  }
  for (int v = 0; v < (ring ? ring->size() : 0); ++v)
    if (a.degree(v) < b.degree(v)) return std::nullopt;
  std::map<Monomial, Rat, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);
  const Monomial& blm = b.lm();
  const Rat inv = 1 / b.lc();
  std::vector<Term> q;
  Rat tmp;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!blm.divides(it->first)) return std::nullopt;
    const Monomial qm = it->first / blm;
    const Rat qc = it->second * inv;
    rem.erase(it);
    for (std::size_t j = 1; j < b.size(); ++j) {
      const Term& bt = b.terms()[j];
      mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), bt.coeff.get_mpq_t());
      auto [pos, inserted] = rem.try_emplace(qm * bt.mono, -tmp);
      if (!inserted) {
        pos->second -= tmp;
        if (pos->second == 0) rem.erase(pos);
      }
    }
    q.push_back({qm, qc});
  }
  return MPoly(ring, std::move(q));
}

MPoly divide_exact(const MPoly& a, const MPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw InvariantError("mpoly.exact_division", "divisor does not divide dividend");
  return std::move(*q);
}

bool equal_up_to_unit(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  return a.normalized() == b.normalized();
}

}  // namespace scrollrec::algebra
