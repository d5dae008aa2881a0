#ifndef CITS_PLOT_HPP
#define CITS_PLOT_HPP

// Static SVG line charts: cut vs epoch (median with interquartile band) and
// success rate vs node count. Output is deterministic apart from the
// version comment on the second line.

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cits/bench.hpp"
#include "cits/run_record.hpp"

namespace cits {

inline constexpr std::string_view kVersion = "0.1.0";

struct CutSeries {
  std::string label;
  std::vector<RunRecord> runs;
};

struct SuccessSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (node count, success rate)
};

namespace detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
inline constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 140, kTop = 30,
                        kBottom = 50;

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x_min, x_max, y_min, y_max;

  double px(double x) const {
    const double span = x_max > x_min ? x_max - x_min : 1.0;
    return kLeft + (x - x_min) / span * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    const double span = y_max > y_min ? y_max - y_min : 1.0;
    return kHeight - kBottom - (y - y_min) / span * (kHeight - kTop - kBottom);
  }
};

inline void open_svg(std::ostringstream& out, const Frame& f, const std::string& title,
                     const std::string& x_label, const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<!-- cits " << kVersion << " -->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"18\" text-anchor=\"middle\">" << title
      << "</text>\n";
  const double x0 = f.px(f.x_min), x1 = f.px(f.x_max), y0 = f.py(f.y_min), y1 = f.py(f.y_max);
  out << "<path d=\"M" << fmt(x0) << ' ' << fmt(y1) << " V" << fmt(y0) << " H" << fmt(x1)
      << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x_min + (f.x_max - f.x_min) * k / 4.0;
    const double yv = f.y_min + (f.y_max - f.y_min) * k / 4.0;
    out << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << fmt(y0 + 16)
        << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  out << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"14\" y=\"" << fmt((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt((y0 + y1) / 2) << ")\">" << y_label << "</text>\n";
}

inline void legend_entry(std::ostringstream& out, std::size_t k, const std::string& label) {
  const double x = kWidth - kRight + 16;
  const double y = kTop + 20 + 18.0 * static_cast<double>(k);
  out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x + 20) << "\" y2=\""
      << fmt(y) << "\" stroke=\"" << kPalette[k % 5] << "\" stroke-width=\"2\"/>\n";
  out << "<text x=\"" << fmt(x + 26) << "\" y=\"" << fmt(y + 4) << "\">" << label << "</text>\n";
}

}  // namespace detail

/// Median cut per epoch as a line, Q25..Q75 as a shaded band.
inline std::string render_cut_svg(std::span<const CutSeries> series, const std::string& title) {
  std::size_t epochs = 0;
  long top = 1;
  for (const CutSeries& s : series) {
    for (const RunRecord& r : s.runs) {
      epochs = std::max(epochs, r.cuts_per_epoch.size());
      if (!r.cuts_per_epoch.empty()) top = std::max(top, r.cuts_per_epoch.back());
    }
  }
  const detail::Frame f{1.0, static_cast<double>(std::max<std::size_t>(epochs, 2)), 0.0,
                        static_cast<double>(top)};
  std::ostringstream out;
  detail::open_svg(out, f, title, "epoch", "cut");

  for (std::size_t k = 0; k < series.size(); ++k) {
    const CutSeries& s = series[k];
    std::vector<double> lo, mid, hi;
    for (std::size_t t = 0; t < epochs; ++t) {
      std::vector<std::size_t> column;
      for (const RunRecord& r : s.runs) {
        if (t < r.cuts_per_epoch.size()) column.push_back(static_cast<std::size_t>(r.cuts_per_epoch[t]));
      }
      if (column.empty()) break;
      std::sort(column.begin(), column.end());
      lo.push_back(static_cast<double>(nearest_rank(column, 25)));
      mid.push_back(static_cast<double>(nearest_rank(column, 50)));
      hi.push_back(static_cast<double>(nearest_rank(column, 75)));
    }
    const char* color = detail::kPalette[k % 5];
    if (!mid.empty()) {
      out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
      for (std::size_t t = 0; t < hi.size(); ++t) {
        out << detail::fmt(f.px(static_cast<double>(t + 1))) << ',' << detail::fmt(f.py(hi[t])) << ' ';
      }
      for (std::size_t t = lo.size(); t-- > 0;) {
        out << detail::fmt(f.px(static_cast<double>(t + 1))) << ',' << detail::fmt(f.py(lo[t])) << ' ';
      }
      out << "\"/>\n<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t t = 0; t < mid.size(); ++t) {
        out << detail::fmt(f.px(static_cast<double>(t + 1))) << ',' << detail::fmt(f.py(mid[t])) << ' ';
      }
      out << "\"/>\n";
    }
    detail::legend_entry(out, k, s.label);
  }
  out << "</svg>\n";
  return out.str();
}

inline std::string render_success_svg(std::span<const SuccessSeries> series,
                                      const std::string& title) {
  double x_min = 0, x_max = 1;
  bool first = true;
  for (const SuccessSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = first ? x : std::min(x_min, x);
      x_max = first ? x : std::max(x_max, x);
      first = false;
    }
  }
  const detail::Frame f{x_min, x_max, 0.0, 1.0};
  std::ostringstream out;
  detail::open_svg(out, f, title, "nodes", "success rate");
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << detail::kPalette[k % 5]
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : series[k].points) {
      out << detail::fmt(f.px(x)) << ',' << detail::fmt(f.py(y)) << ' ';
    }
    out << "\"/>\n";
    detail::legend_entry(out, k, series[k].label);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cits

#endif  // CITS_PLOT_HPP
