#include <doctest.h>

#include "scrollrec/algebra/rings.hpp"
#include "scrollrec/errors.hpp"
#include "scrollrec/io/manifest.hpp"

using namespace scrollrec;
using namespace scrollrec::algebra;

namespace {

void check_same(const oracle::Scene& a, const oracle::Scene& b) {
  CHECK(a.kind == b.kind);
  CHECK(a.d == b.d);
  CHECK(a.d1 == b.d1);
  CHECK(a.d2 == b.d2);
  CHECK(a.seed == b.seed);
  CHECK(a.projection == b.projection);
  CHECK(a.surface == b.surface);
  CHECK(a.curve == b.curve);
  CHECK(a.equation == b.equation);
  for (auto [x, y] : {std::pair{&a.B, &b.B}, {&a.W, &b.W}, {&a.C, &b.C}, {&a.D, &b.D}, {&a.lines, &b.lines}}) {
    REQUIRE(x->has_value() == y->has_value());
    if (*x) CHECK((*x)->equation() == (*y)->equation());
  }
  CHECK(a.smooth_point == b.smooth_point);
  REQUIRE(a.pinch_images.size() == b.pinch_images.size());
  for (std::size_t i = 0; i < a.pinch_images.size(); ++i) {
    CHECK(a.pinch_images[i].minpoly == b.pinch_images[i].minpoly);
    CHECK(a.pinch_images[i].coords == b.pinch_images[i].coords);
  }
  CHECK(a.prefactored == b.prefactored);
  CHECK(a.problems == b.problems);
}

std::string without_line(const std::string& text, const std::string& key) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = text.substr(pos, end - pos + 1);
    if (line.rfind(key + ":", 0) != 0) out += line;
    pos = end + 1;
  }
  return out;
}

std::string parse_failure(const std::string& text) {
  try {
    io::read_scene(text);
  } catch (const ParseError& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST_CASE("ruled scene round trip is bit-exact") {
  auto sc = oracle::generate_ruled(1, 3, 11);
  sc.prefactored.push_back(MPoly::parse(scroll_ring(), "s^2*t - 3/4*t + 1"));
  const auto text = io::write_scene(sc);
  const auto back = io::read_scene(text);
  check_same(sc, back);
  CHECK(io::write_scene(back) == text);
}

TEST_CASE("developable scene round trip is bit-exact") {
  const auto sc = oracle::generate_developable(4, 5);
  const auto text = io::write_scene(sc);
  const auto back = io::read_scene(text);
  check_same(sc, back);
  CHECK(io::write_scene(back) == text);
}

TEST_CASE("scene with recorded problems") {
  oracle::Scene sc;
  sc.d = 4;
  sc.d1 = 1;
  sc.d2 = 3;
  sc.equation = MPoly(space_ring());
  sc.problems = {"surface: implicitize.proper: not birational", "line one\nline two"};
  const auto back = io::read_scene(io::write_scene(sc));
  CHECK(back.problems == std::vector<std::string>{"surface: implicitize.proper: not birational", "line one line two"});
}

TEST_CASE("results round trip") {
  const auto sc = oracle::generate_ruled(2, 2, 4);
  const auto text = io::write_surface(sc.surface);
  CHECK(io::read_surface(text) == sc.surface);
  CHECK(io::write_surface(io::read_surface(text)) == text);

  const auto H = oracle::td_curve(4, {{1, 0, 2, -1, 3}, {0, 1, 1, 2, -2}, {2, -1, 0, 1, 1}, {1, 1, -3, 0, 2}});
  const auto ctext = io::write_curve(H);
  CHECK(io::read_curve(ctext) == H);
  CHECK(io::write_curve(io::read_curve(ctext)) == ctext);
}

TEST_CASE("factor lists") {
  const auto f = io::read_factors("# factors\ns - t\n\ns*t^2 + 1/2\n");
  REQUIRE(f.size() == 2);
  CHECK(f[1] == MPoly::parse(scroll_ring(), "s*t^2 + 1/2"));
  CHECK_THROWS_AS(io::read_factors("s + u\n"), ParseError);
}

TEST_CASE("parse errors name the key") {
  const auto text = io::write_scene(oracle::generate_ruled(1, 3, 11));
  CHECK(parse_failure(text + "colour: blue\n") == "manifest.key");
  CHECK(parse_failure(text + "B: x0\n") == "manifest.B");
  CHECK(parse_failure(without_line(text, "seed")) == "manifest.seed");
  CHECK(parse_failure(without_line(text, "seed") + "seed: -4\n") == "manifest.seed");
  CHECK(parse_failure(without_line(text, "W") + "W: x0^2 +* x1\n") == "manifest.W");
  CHECK(parse_failure(without_line(text, "kind") + "kind: cone\n") == "manifest.kind");
  CHECK(parse_failure(text + "no colon here\n") == "manifest.line");
  CHECK(parse_failure(text + "projection: 1 2\n") == "manifest.projection");
  CHECK(parse_failure(text + "pinch_image: u^2 - 2\n") == "manifest.pinch_image");
  CHECK_THROWS_AS(io::read_surface("q1: t ; 1 ; 0 ; 0\n"), ParseError);
  CHECK_THROWS_AS(io::read_file("/nonexistent/scene.txt"), ParseError);
}
