#pragma once

#include <string>
#include <vector>

#include "scrollrec/algebra/mpoly.hpp"
#include "scrollrec/oracle/oracle.hpp"
#include "scrollrec/param/param.hpp"
#include "scrollrec/scroll/scroll.hpp"

namespace scrollrec::io {

// Line-based "key: value" text. Polynomials use the algebra string format;
// vectors of polynomials and clusters are separated by " ; ". Keys that may
// repeat (projection rows, pinch images, factors, problems) keep their order.
// Every reader throws ParseError naming the offending key or line.

std::string write_scene(const oracle::Scene& scene);
oracle::Scene read_scene(const std::string& text);

/// A reconstructed ruled surface: the two coefficient vectors in t.
std::string write_surface(const scroll::ScrollMap& surface);
scroll::ScrollMap read_surface(const std::string& text);

/// A reconstructed space curve: four forms in (t0, t1).
std::string write_curve(const param::ParamCurve& curve);
param::ParamCurve read_curve(const std::string& text);

/// Factors of a pullback, one polynomial in (s, t) per nonempty line.
std::vector<algebra::MPoly> read_factors(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace scrollrec::io
