#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "scrollrec/errors.hpp"
#include "scrollrec/io/manifest.hpp"
#include "scrollrec/lift3d/lift3d.hpp"
#include "scrollrec/oracle/oracle.hpp"
#include "scrollrec/tangdev/tangdev.hpp"

using namespace scrollrec;

namespace {

constexpr int kOk = 0;
constexpr int kGoodness = 2;
constexpr int kInternal = 3;
constexpr int kParse = 4;

struct Args {
  std::string kind = "ruled";
  int d = 4, d1 = 1, d2 = 3;
  std::uint64_t seed = 1;
  int max_attempts = 32;
  std::string input, output, result, factors;
  std::string strategy = "mates";
  int pinch_count = -1;
  int jobs = 1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

void require_distinct(const std::string& a, const std::string& b) {
  if (!a.empty() && a != "-" && a == b) throw ParseError("cli.paths", "input and output paths must differ");
}

int report_exit(const curves::Report& r, const std::string& out, int failure) {
  emit(out, r.str());
  if (r.ok()) return kOk;
  for (const auto& c : r.checks)
    if (!c.ok) std::cerr << c.name << ": " << c.detail << "\n";
  return failure;
}

int gen(const Args& a) {
  const auto kind = oracle::kind_from_string(a.kind);
  const auto sc = kind == oracle::Kind::ruled ? oracle::generate_ruled(a.d1, a.d2, a.seed, a.max_attempts)
                                              : oracle::generate_developable(a.d, a.seed, a.max_attempts);
  emit(a.output, io::write_scene(sc));
  return kOk;
}

int audit(const Args& a) {
  const auto sc = io::read_scene(io::read_file(a.input));
  return report_exit(oracle::genericity_audit(sc), a.output, kGoodness);
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw ParseError(std::string("manifest.") + what, std::string("scene has no ") + what);
  return *v;
}

int reconstruct_ruled(const Args& a) {
  require_distinct(a.input, a.output);
  const auto sc = io::read_scene(io::read_file(a.input));
  lift3d::Options opts;
  opts.strategy = lift3d::strategy_from_string(a.strategy);
  opts.pinch_count = a.pinch_count;
  opts.pinch_images = sc.pinch_images;
  opts.prefactored = a.factors.empty() ? sc.prefactored : io::read_factors(io::read_file(a.factors));
  opts.seed = a.seed;
  opts.jobs = a.jobs;
  const auto S = lift3d::reconstruct_rat_ruled_surface(need(sc.B, "B"), need(sc.W, "W"), sc.smooth_point, opts);
  emit(a.output, io::write_surface(S.scroll));
  return kOk;
}

int reconstruct_tangdev(const Args& a) {
  require_distinct(a.input, a.output);
  const auto sc = io::read_scene(io::read_file(a.input));
  const auto H = tangdev::reconstruct_tangent_developable(need(sc.C, "C"), sc.D, sc.smooth_point, a.seed);
  emit(a.output, io::write_curve(H));
  return kOk;
}

int verify(const Args& a) {
  require_distinct(a.input, a.output);
  require_distinct(a.result, a.output);
  const auto sc = io::read_scene(io::read_file(a.input));
  const auto text = io::read_file(a.result);
  const auto r = sc.kind == oracle::Kind::ruled ? oracle::verify_reconstruction(sc, io::read_surface(text))
                                                : oracle::verify_reconstruction(sc, io::read_curve(text));
  return report_exit(r, a.output, kInternal);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruction of rational ruled surfaces from planar silhouettes"};
  app.require_subcommand(1);
  Args a;

  auto* g = app.add_subcommand("gen", "generate a good random scene");
  g->add_option("--kind", a.kind, "ruled or developable")->check(CLI::IsMember({"ruled", "developable"}));
  g->add_option("--d", a.d, "degree of the developable's curve");
  g->add_option("--d1", a.d1, "scroll type, smaller degree");
  g->add_option("--d2", a.d2, "scroll type, larger degree");
  g->add_option("--max-attempts", a.max_attempts, "projections drawn before giving up");

  auto* au = app.add_subcommand("audit", "genericity and Pluecker checks of a scene");
  auto* rr = app.add_subcommand("reconstruct-ruled", "surface from B, W and a smooth point of B");
  rr->add_option("--strategy", a.strategy, "mates or pinch")->check(CLI::IsMember({"mates", "pinch"}));
  rr->add_option("--pinch-count", a.pinch_count, "number of pinch points to use (default 2(d-2))");
  rr->add_option("--factors", a.factors, "file with factors of the pullback of W, one per line");
  rr->add_option("--jobs", a.jobs, "parallel subset trials")->check(CLI::PositiveNumber);
  auto* rt = app.add_subcommand("reconstruct-tangdev", "space curve from C, D and a smooth point of C");
  auto* v = app.add_subcommand("verify", "recompute the silhouette of a result and compare");
  v->add_option("--result", a.result, "reconstruction output")->required();

  for (auto* sub : {g, au, rr, rt, v}) {
    sub->add_option("--seed", a.seed, "seed for every random choice");
    sub->add_option("-o,--output", a.output, "output file (default: standard output)");
    if (sub != g) sub->add_option("-i,--input", a.input, "scene manifest")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*g) return gen(a);
    if (*au) return audit(a);
    if (*rr) return reconstruct_ruled(a);
    if (*rt) return reconstruct_tangdev(a);
    if (*v) return verify(a);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const GoodnessError& e) {
    std::cerr << e.what() << "\n";
    return kGoodness;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kGoodness;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
