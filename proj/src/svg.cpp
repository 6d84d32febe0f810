#include "wgschwarz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wgs {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#17becf", "#bcbd22", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(Real v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Largest of {1,2,5}*10^k not exceeding the raw step.
Real nice_step(Real span, int target_ticks) {
  const Real raw = span / std::max(target_ticks, 1);
  const Real mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (Real m : {5.0, 2.0, 1.0}) {
    if (m * mag <= raw) return m * mag;
  }
  return mag;
}

struct AxisRange {
  Real lo = 0;
  Real hi = 1;
};

AxisRange padded(Real lo, Real hi) {
  if (!(hi > lo)) {
    const Real pad = std::max(std::abs(lo), 1.0) * 0.5;
    return {lo - pad, hi + pad};
  }
  const Real pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series, const SvgOptions& options) {
  const int width = options.width;
  const int height = options.height;
  const Real left = 72, right = width - 24, top = 48, bottom = height - 56;

  // Collect the plottable values (log axis drops nonpositive y).
  bool any = false;
  Real xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  auto transform = [&](Real y) { return options.ylog ? std::log10(y) : y; };
  for (const SvgSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (options.ylog && !(y > 0)) continue;
      const Real ty = transform(y);
      if (!std::isfinite(ty)) continue;
      if (!any) {
        xlo = xhi = x;
        ylo = yhi = ty;
        any = true;
      } else {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, ty);
        yhi = std::max(yhi, ty);
      }
    }
  }
  const AxisRange xr = padded(xlo, xhi);
  const AxisRange yr = padded(ylo, yhi);
  auto px = [&](Real x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * (right - left); };
  auto py = [&](Real ty) { return bottom - (ty - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"15\" fill=\"#000000\">" << escape(options.title) << "</text>\n";

  // Axes.
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
      << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#000000\"/>\n";
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
      << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#000000\"/>\n";

  // x ticks.
  const Real xstep = nice_step(xr.hi - xr.lo, 6);
  for (Real t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-12 * xstep; t += xstep) {
    const Real x = px(t);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << fmt(bottom + 5) << "\" stroke=\"#000000\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#000000\">"
        << fmt(t, "%.6g") << "</text>\n";
  }
  // y ticks: on a log axis prefer integer decades when the span has any.
  std::vector<Real> yticks;
  if (options.ylog && std::floor(yr.hi) >= std::ceil(yr.lo)) {
    for (Real e = std::ceil(yr.lo); e <= std::floor(yr.hi) + 0.5; e += 1.0) {
      yticks.push_back(e);
    }
  } else {
    const Real ystep = nice_step(yr.hi - yr.lo, 6);
    for (Real t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-12 * ystep; t += ystep) {
      yticks.push_back(t);
    }
  }
  for (Real t : yticks) {
    const Real y = py(t);
    out << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#000000\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(right)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
    const std::string label = options.ylog ? ("1e" + fmt(t, "%.0f")) : fmt(t, "%.6g");
    out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">"
        << label << "</text>\n";
  }
  // Axis labels.
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#000000\">"
      << escape(options.xlabel) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\""
      << " transform=\"rotate(-90 18 " << (top + bottom) / 2 << ")\">" << escape(options.ylabel)
      << "</text>\n";

  // Series.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    const char* dash = s.dashed ? " stroke-dasharray=\"7 4\"" : "";
    std::vector<std::string> segment;
    auto flush = [&]() {
      if (segment.size() >= 2) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash
            << " points=\"";
        for (std::size_t i = 0; i < segment.size(); ++i) {
          if (i) out << ' ';
          out << segment[i];
        }
        out << "\"/>\n";
      } else if (segment.size() == 1) {
        out << "<circle r=\"2\" fill=\"" << color << "\" cx=\""
            << segment[0].substr(0, segment[0].find(',')) << "\" cy=\""
            << segment[0].substr(segment[0].find(',') + 1) << "\"/>\n";
      }
      segment.clear();
    };
    for (const auto& [x, y] : s.points) {
      const bool usable = std::isfinite(x) && std::isfinite(y) && (!options.ylog || y > 0);
      if (!usable) {
        flush();  // skipped point: break the line here
        continue;
      }
      segment.push_back(fmt(px(x)) + "," + fmt(py(transform(y))));
    }
    flush();
  }

  // Legend.
  const Real legend_x = right - 170;
  Real legend_y = top + 8;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    const char* dash = s.dashed ? " stroke-dasharray=\"7 4\"" : "";
    out << "<line x1=\"" << fmt(legend_x) << "\" y1=\"" << fmt(legend_y) << "\" x2=\""
        << fmt(legend_x + 28) << "\" y2=\"" << fmt(legend_y) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"" << dash << "/>\n";
    out << "<text x=\"" << fmt(legend_x + 34) << "\" y=\"" << fmt(legend_y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">" << escape(s.label)
        << "</text>\n";
    legend_y += 16;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace wgs
