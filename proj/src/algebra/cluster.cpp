#include "scrollrec/algebra/cluster.hpp"

#include <algorithm>
#include <functional>

#include "scrollrec/algebra/factor.hpp"
#include "scrollrec/algebra/linalg.hpp"
#include "scrollrec/algebra/resultant.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::algebra {

std::vector<Rat> AlgCluster::rational_point() const {
  if (minpoly.degree() != 1) throw PreconditionError("cluster.rational", "cluster is not a single rational point");
  const Rat root = -minpoly.coeff(0) / minpoly.coeff(1);
  std::vector<Rat> out;
  for (const auto& c : coords) out.push_back(c(root));
  return out;
}

AlgCluster AlgCluster::rational(const std::vector<Rat>& point) {
  AlgCluster c;
  c.minpoly = UPoly::x();
  for (const auto& v : point) c.coords.emplace_back(v);
  return c;
}

UPoly evaluate_at(const MPoly& f, const AlgCluster& c, const std::vector<int>& var_of_coord) {
  const Ext K(c.minpoly);
  const int n = f.ring()->size();
  std::vector<int> coord_of_var(n, -1);
  for (std::size_t i = 0; i < var_of_coord.size(); ++i)
    if (var_of_coord[i] >= 0) coord_of_var[var_of_coord[i]] = static_cast<int>(i);
  std::vector<std::vector<UPoly>> powers(n);
  auto power = [&](int var, int e) -> const UPoly& {
    auto& p = powers[var];
    if (p.empty()) p.push_back(UPoly(Rat(1)));
    while (static_cast<int>(p.size()) <= e) p.push_back(K.mul(p.back(), K.reduce(c.coords[coord_of_var[var]])));
    return p[e];
  };
  UPoly acc;
  for (const auto& t : f.terms()) {
    UPoly v(t.coeff);
    for (int var = 0; var < n; ++var) {
      const int e = t.mono.exp(var);
      if (e == 0) continue;
      if (coord_of_var[var] < 0)
        throw PreconditionError("cluster.evaluate", "variable " + f.ring()->name(var) + " has no coordinate");
      v = K.mul(v, power(var, e));
    }
    acc += v;
  }
  return K.reduce(acc);
}

UPoly evaluate_at(const MPoly& f, const AlgCluster& c) {
  std::vector<int> map(c.coords.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i < static_cast<std::size_t>(f.ring()->size()) ? static_cast<int>(i) : -1;
  return evaluate_at(f, c, map);
}

bool vanishes_at(const MPoly& f, const AlgCluster& c) { return evaluate_at(f, c).is_zero(); }

namespace {

AlgCluster with_minpoly(const AlgCluster& c, const UPoly& m) {
  AlgCluster out;
  out.minpoly = m.monic();
  for (const auto& x : c.coords) out.coords.push_back(x % out.minpoly);
  return out;
}

}  // namespace

std::vector<AlgCluster> irreducible_parts(const AlgCluster& c) {
  std::vector<AlgCluster> out;
  for (const auto& [f, mult] : factor(c.minpoly)) out.push_back(with_minpoly(c, f));
  return out;
}

std::optional<AlgCluster> restrict_zero(const AlgCluster& c, const UPoly& g) {
  const UPoly h = gcd(c.minpoly, g % c.minpoly);
  if (h.is_zero()) return c;
  if (h.degree() == 0) return std::nullopt;
  return with_minpoly(c, h);
}

std::optional<AlgCluster> restrict_nonzero(const AlgCluster& c, const UPoly& g) {
  const UPoly h = gcd(c.minpoly, g % c.minpoly);
  if (h.is_zero()) return std::nullopt;
  if (h.degree() == 0) return c;
  if (h.degree() == c.minpoly.degree()) return std::nullopt;
  return with_minpoly(c, c.minpoly / h);
}

std::vector<AlgCluster> normalize_projective(const AlgCluster& c) {
  std::vector<AlgCluster> out;
  std::optional<AlgCluster> rest = c;
  for (std::size_t i = 0; i < c.coords.size() && rest; ++i) {
    if (auto part = restrict_nonzero(*rest, rest->coords[i])) {
      const Ext K(part->minpoly);
      const UPoly inv = K.inv(part->coords[i]);
      for (auto& x : part->coords) x = K.mul(x, inv);
      out.push_back(std::move(*part));
    }
    rest = restrict_zero(*rest, rest->coords[i]);
  }
  if (rest) throw PreconditionError("cluster.projective", "all coordinates vanish at some point");
  return out;
}

AlgCluster canonical(const AlgCluster& c) {
  const int n = c.degree();
  const Ext K(c.minpoly);
  auto ring = Ring::make({"u", "z"});
  const MPoly m = MPoly::from_upoly(ring, c.minpoly, 0);
  for (int k = 1; k < 64; ++k) {
    // theta = sum_i k^i x_i
    UPoly theta;
    Rat w = 1;
    for (const auto& x : c.coords) {
      theta += x * w;
      w *= k;
    }
    theta = K.reduce(theta);
    const MPoly zt = MPoly::variable(ring, 1) - MPoly::from_upoly(ring, theta, 0);
    UPoly chi = n == 1 ? UPoly({theta.coeff(0) * -1, Rat(1)}) : resultant(m, zt, 0).to_upoly(1);
    if (chi.degree() != n || gcd(chi, chi.derivative()).degree() != 0) continue;
    chi = chi.monic();
    // Coordinates in terms of theta: solve sum_j a_j theta^j = x.
    Mat A(n, Vec(n, Rat(0)));
    UPoly pw(Rat(1));
    for (int j = 0; j < n; ++j) {
      const auto col = K.coords(pw);
      for (int i = 0; i < n; ++i) A[i][j] = col[i];
      pw = K.mul(pw, theta);
    }
    AlgCluster out;
    out.minpoly = chi;
    for (const auto& x : c.coords) {
      auto sol = solve(A, K.coords(x), n);
      if (!sol) throw InvariantError("cluster.canonical", "primitive element does not generate");
      out.coords.emplace_back(*sol);
    }
    return out;
  }
  throw InvariantError("cluster.canonical", "no separating linear form found");
}

bool same_points(const AlgCluster& a, const AlgCluster& b) {
  auto key = [](const AlgCluster& c) {
    std::vector<std::string> parts;
    for (const auto& p : normalize_projective(c))
      for (const auto& q : irreducible_parts(p)) parts.push_back(str(canonical(q)));
    std::sort(parts.begin(), parts.end());
    return parts;
  };
  return a.degree() == b.degree() && a.dim() == b.dim() && key(a) == key(b);
}

AlgCluster transform(const AlgCluster& c, const std::vector<std::vector<Rat>>& M) {
  AlgCluster out;
  out.minpoly = c.minpoly;
  for (const auto& row : M) {
    UPoly acc;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) acc += c.coords[j] * row[j];
    out.coords.push_back(acc);
  }
  return out;
}

std::string str(const AlgCluster& c) {
  std::string s = c.minpoly.str("u");
  for (const auto& x : c.coords) s += " ; " + x.str("u");
  return s;
}

std::vector<std::vector<int>> subsets_of_degree(const std::vector<int>& degrees, int total) {
  std::vector<std::vector<int>> out;
  if (total == 0) return {{}};
  const int n = static_cast<int>(degrees.size());
  std::vector<int> cur;
  std::function<void(int, int, int)> rec = [&](int start, int left, int size) {
    if (size == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      if (degrees[i] > left || degrees[i] <= 0) continue;
      cur.push_back(i);
      rec(i + 1, left - degrees[i], size - 1);
      cur.pop_back();
    }
  };
  for (int size = 1; size <= std::min(n, total); ++size) rec(0, total, size);
  return out;
}

}  // namespace scrollrec::algebra
