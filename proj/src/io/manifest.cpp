#include "scrollrec/io/manifest.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"

namespace scrollrec::io {

using namespace algebra;
using curves::PlaneCurve;
using oracle::Scene;

namespace {

const RingPtr& cluster_ring() {
  static const RingPtr R = Ring::make({"u"});
  return R;
}

using Entries = std::vector<std::pair<std::string, std::string>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Entries parse_entries(const std::string& text) {
  Entries out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos)
      throw ParseError("manifest.line", "line " + std::to_string(no) + " has no key: '" + t + "'");
    out.emplace_back(trim(t.substr(0, colon)), trim(t.substr(colon + 1)));
  }
  return out;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + sep.size();
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Errors from nested parsers are reported under the key being read.
template <class F>
auto keyed(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.invariant().rfind("manifest.", 0) == 0) throw;
    throw ParseError("manifest." + key, e.what());
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string upolys_str(const std::vector<UPoly>& v) {
  std::vector<std::string> parts;
  for (const auto& p : v) parts.push_back(p.str("t"));
  return join(parts, " ; ");
}

std::vector<UPoly> parse_upolys(const std::string& s) {
  std::vector<UPoly> out;
  for (const auto& part : split(s, ";")) out.push_back(MPoly::parse(line_ring(), part).to_upoly(0));
  return out;
}

std::string forms_str(const std::vector<MPoly>& v) {
  std::vector<std::string> parts;
  for (const auto& p : v) parts.push_back(p.str());
  return join(parts, " ; ");
}

std::vector<MPoly> parse_forms(const RingPtr& R, const std::string& s) {
  std::vector<MPoly> out;
  for (const auto& part : split(s, ";")) out.push_back(MPoly::parse(R, part));
  return out;
}

AlgCluster parse_cluster(const std::string& s) {
  const auto parts = split(s, ";");
  if (parts.size() < 2) throw ParseError("cluster.syntax", "expected 'minpoly ; c0 ; ...'");
  AlgCluster c;
  c.minpoly = MPoly::parse(cluster_ring(), parts[0]).to_upoly(0);
  if (c.minpoly.degree() < 1) throw ParseError("cluster.minpoly", "minimal polynomial must be nonconstant");
  for (std::size_t i = 1; i < parts.size(); ++i) c.coords.push_back(MPoly::parse(cluster_ring(), parts[i]).to_upoly(0) % c.minpoly);
  return c;
}

std::string rats_str(const std::vector<Rat>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return join(parts, " ");
}

std::vector<Rat> parse_rats(const std::string& s) {
  std::vector<Rat> out;
  for (const auto& w : words(s)) out.push_back(parse_rat(w));
  return out;
}

long parse_int(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError("int.syntax", "not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("seed.syntax", "seed must be a nonnegative integer: '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError("seed.range", "seed out of range: '" + s + "'");
  }
}

class Reader {
 public:
  explicit Reader(Entries e) : entries_(std::move(e)) {}

  std::vector<std::string> all(const std::string& key) {
    used_[key] = true;
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_)
      if (k == key) out.push_back(v);
    return out;
  }
  std::optional<std::string> optional(const std::string& key) {
    const auto v = all(key);
    if (v.size() > 1) throw ParseError("manifest." + key, "key given more than once");
    if (v.empty()) return std::nullopt;
    return v[0];
  }
  std::string required(const std::string& key) {
    const auto v = optional(key);
    if (!v) throw ParseError("manifest." + key, "missing key");
    return *v;
  }
  void finish() const {
    for (const auto& [k, v] : entries_)
      if (!used_.count(k)) throw ParseError("manifest.key", "unknown key '" + k + "'");
  }

 private:
  Entries entries_;
  std::map<std::string, bool> used_;
};

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

std::string write_scene(const Scene& sc) {
  std::ostringstream os;
  os << "kind: " << oracle::to_string(sc.kind) << "\n";
  os << "d: " << sc.d << "\n";
  os << "d1: " << sc.d1 << "\n";
  os << "d2: " << sc.d2 << "\n";
  os << "seed: " << sc.seed << "\n";
  for (const auto& row : sc.projection) os << "projection: " << rats_str(row) << "\n";
  if (sc.surface.ambient() > 0) {
    os << "surface.q1: " << upolys_str(sc.surface.q1()) << "\n";
    os << "surface.q2: " << upolys_str(sc.surface.q2()) << "\n";
  }
  if (sc.curve) os << "curve: " << forms_str(sc.curve->components()) << "\n";
  if (!sc.equation.is_zero()) os << "equation: " << sc.equation.str() << "\n";
  const std::pair<const char*, const std::optional<PlaneCurve>*> curves[] = {
      {"B", &sc.B}, {"W", &sc.W}, {"C", &sc.C}, {"D", &sc.D}, {"lines", &sc.lines}};
  for (const auto& [name, c] : curves)
    if (*c) os << name << ": " << (*c)->str() << "\n";
  if (!sc.smooth_point.empty()) os << "smooth_point: " << rats_str(sc.smooth_point) << "\n";
  for (const auto& c : sc.pinch_images) os << "pinch_image: " << str(c) << "\n";
  for (const auto& f : sc.prefactored) os << "prefactored: " << f.str() << "\n";
  for (const auto& p : sc.problems) os << "problem: " << one_line(p) << "\n";
  return os.str();
}

Scene read_scene(const std::string& text) {
  Reader rd(parse_entries(text));
  Scene sc;
  sc.kind = keyed("kind", [&] { return oracle::kind_from_string(rd.required("kind")); });
  sc.d = static_cast<int>(keyed("d", [&] { return parse_int(rd.required("d")); }));
  sc.d1 = static_cast<int>(keyed("d1", [&] { return parse_int(rd.required("d1")); }));
  sc.d2 = static_cast<int>(keyed("d2", [&] { return parse_int(rd.required("d2")); }));
  sc.seed = keyed("seed", [&] { return parse_seed(rd.required("seed")); });
  for (const auto& row : rd.all("projection")) sc.projection.push_back(keyed("projection", [&] { return parse_rats(row); }));
  for (const auto& row : sc.projection)
    if (row.size() != sc.projection.front().size()) throw ParseError("manifest.projection", "ragged projection matrix");
  const auto q1 = rd.optional("surface.q1");
  const auto q2 = rd.optional("surface.q2");
  if (q1.has_value() != q2.has_value()) throw ParseError("manifest.surface", "need both surface.q1 and surface.q2");
  if (q1) sc.surface = keyed("surface", [&] { return scroll::ScrollMap(parse_upolys(*q1), parse_upolys(*q2)); });
  if (const auto c = rd.optional("curve"))
    sc.curve = keyed("curve", [&] { return param::ParamCurve(parse_forms(param_ring(), *c)); });
  if (const auto e = rd.optional("equation"))
    sc.equation = keyed("equation", [&] { return MPoly::parse(space_ring(), *e); });
  else
    sc.equation = MPoly(space_ring());
  const std::pair<const char*, std::optional<PlaneCurve>*> curves[] = {
      {"B", &sc.B}, {"W", &sc.W}, {"C", &sc.C}, {"D", &sc.D}, {"lines", &sc.lines}};
  for (const auto& [name, c] : curves)
    if (const auto v = rd.optional(name)) *c = keyed(name, [&] { return PlaneCurve::parse(*v); });
  if (const auto p = rd.optional("smooth_point")) sc.smooth_point = keyed("smooth_point", [&] { return parse_rats(*p); });
  for (const auto& c : rd.all("pinch_image")) sc.pinch_images.push_back(keyed("pinch_image", [&] { return parse_cluster(c); }));
  for (const auto& f : rd.all("prefactored"))
    sc.prefactored.push_back(keyed("prefactored", [&] { return MPoly::parse(scroll_ring(), f); }));
  sc.problems = rd.all("problem");
  rd.finish();
  return sc;
}

std::string write_surface(const scroll::ScrollMap& surface) {
  return "q1: " + upolys_str(surface.q1()) + "\nq2: " + upolys_str(surface.q2()) + "\n";
}

scroll::ScrollMap read_surface(const std::string& text) {
  Reader rd(parse_entries(text));
  const auto q1 = rd.required("q1");
  const auto q2 = rd.required("q2");
  rd.finish();
  return keyed("surface", [&] { return scroll::ScrollMap(parse_upolys(q1), parse_upolys(q2)); });
}

std::string write_curve(const param::ParamCurve& curve) { return "curve: " + forms_str(curve.components()) + "\n"; }

param::ParamCurve read_curve(const std::string& text) {
  Reader rd(parse_entries(text));
  const auto c = rd.required("curve");
  rd.finish();
  return keyed("curve", [&] { return param::ParamCurve(parse_forms(param_ring(), c)); });
}

std::vector<MPoly> read_factors(const std::string& text) {
  std::vector<MPoly> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(keyed("factor", [&] { return MPoly::parse(scroll_ring(), t); }));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("file.read", "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("file.write", "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw PreconditionError("file.write", "write to '" + path + "' failed");
}

}  // namespace scrollrec::io
