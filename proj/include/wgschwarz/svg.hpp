#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wgschwarz/types.hpp"

namespace wgs {

// One polyline; non-finite y values (and non-positive ones on a log axis)
// break the line into segments so skipped sweep points leave visible gaps.
struct SvgSeries {
  std::string label;
  bool dashed = false;
  std::vector<std::pair<Real, Real>> points;
};

struct SvgOptions {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool ylog = false;
  int width = 900;
  int height = 560;
};

// Self-contained deterministic SVG: fixed palette, fixed tick policy, no
// external assets, byte-identical for identical inputs.
std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options);

}  // namespace wgs
