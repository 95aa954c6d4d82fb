#include "mstkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "mstkit/error.hpp"

namespace mstkit {
namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Comments may not contain "--".
std::string comment_safe(std::string s) {
  for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "- -");
  return s;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen_if_flat() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// Plot frame with data-to-pixel mapping; SVG y grows downward.
class Canvas {
 public:
  Canvas(const SvgOptions& opt, Range x, Range y) : opt_(opt), x_(x), y_(y) {
    x_.widen_if_flat();
    y_.widen_if_flat();
    left_ = 70.0;
    right_ = opt.width - 20.0;
    top_ = opt.title.empty() ? 20.0 : 40.0;
    bottom_ = opt.height - 50.0;
  }

  double px(double x) const { return left_ + (x - x_.lo) / (x_.hi - x_.lo) * (right_ - left_); }
  double py(double y) const { return bottom_ - (y - y_.lo) / (y_.hi - y_.lo) * (bottom_ - top_); }
  double right() const { return right_; }
  double top() const { return top_; }

  void open(std::ostringstream& os) const {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(opt_.width) << "\" height=\""
       << num(opt_.height) << "\" viewBox=\"0 0 " << num(opt_.width) << ' ' << num(opt_.height) << "\">\n";
    if (!opt_.provenance.empty()) os << "<!-- " << comment_safe(opt_.provenance) << " -->\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num(opt_.width) << "\" height=\"" << num(opt_.height)
       << "\" fill=\"white\"/>\n";
  }

  void frame(std::ostringstream& os) const {
    os << "<rect x=\"" << num(left_) << "\" y=\"" << num(top_) << "\" width=\"" << num(right_ - left_)
       << "\" height=\"" << num(bottom_ - top_) << "\" fill=\"none\" stroke=\"black\"/>\n";
    std::ostringstream ticks;
    for (int i = 0; i <= 4; ++i) {
      const double fx = x_.lo + (x_.hi - x_.lo) * i / 4.0;
      const double fy = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      ticks << 'M' << num(px(fx)) << ' ' << num(bottom_) << "v5";
      ticks << 'M' << num(left_ - 5.0) << ' ' << num(py(fy)) << "h5";
      os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(bottom_ + 18.0)
         << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(fx) << "</text>\n";
      os << "<text x=\"" << num(left_ - 8.0) << "\" y=\"" << num(py(fy) + 4.0)
         << "\" font-size=\"11\" text-anchor=\"end\">" << tick(fy) << "</text>\n";
    }
    os << "<path d=\"" << ticks.str() << "\" stroke=\"black\" fill=\"none\"/>\n";
    if (!opt_.title.empty())
      os << "<text x=\"" << num(0.5 * opt_.width) << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">"
         << xml_escape(opt_.title) << "</text>\n";
    if (!opt_.x_label.empty())
      os << "<text x=\"" << num(0.5 * (left_ + right_)) << "\" y=\"" << num(opt_.height - 12.0)
         << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(opt_.x_label) << "</text>\n";
    if (!opt_.y_label.empty())
      os << "<text x=\"16\" y=\"" << num(0.5 * (top_ + bottom_)) << "\" font-size=\"13\" text-anchor=\"middle\""
         << " transform=\"rotate(-90 16 " << num(0.5 * (top_ + bottom_)) << ")\">" << xml_escape(opt_.y_label)
         << "</text>\n";
  }

  void legend(std::ostringstream& os, const std::vector<std::pair<std::string, std::string>>& entries) const {
    double y = top_ + 16.0;
    for (const auto& [label, color] : entries) {
      if (label.empty()) continue;
      os << "<rect x=\"" << num(right_ - 150.0) << "\" y=\"" << num(y - 9.0)
         << "\" width=\"12\" height=\"10\" fill=\"" << color << "\"/>\n";
      os << "<text x=\"" << num(right_ - 132.0) << "\" y=\"" << num(y) << "\" font-size=\"12\">" << xml_escape(label)
         << "</text>\n";
      y += 16.0;
    }
  }

 private:
  const SvgOptions& opt_;
  Range x_, y_;
  double left_, right_, top_, bottom_;
};

}  // namespace

std::string render_tree_svg(const PointSet& ps, std::span<const Edge> edges, std::size_t x_axis, std::size_t y_axis,
                            const SvgOptions& opt) {
  if (x_axis >= ps.dimension() || y_axis >= ps.dimension())
    fail(ErrorCode::InvalidArgument, "projection axes out of range for " + std::to_string(ps.dimension()) +
                                         "-dimensional points");
  for (const auto& e : edges)
    if (e.u >= ps.size() || e.v >= ps.size()) fail(ErrorCode::InvalidArgument, "tree edge references a missing vertex");

  Range xr{0.0, 1.0}, yr{0.0, 1.0};
  if (!ps.empty()) {
    xr = {ps.coord(0, x_axis), ps.coord(0, x_axis)};
    yr = {ps.coord(0, y_axis), ps.coord(0, y_axis)};
    for (std::size_t i = 1; i < ps.size(); ++i) {
      xr.lo = std::min(xr.lo, ps.coord(i, x_axis));
      xr.hi = std::max(xr.hi, ps.coord(i, x_axis));
      yr.lo = std::min(yr.lo, ps.coord(i, y_axis));
      yr.hi = std::max(yr.hi, ps.coord(i, y_axis));
    }
  }
  SvgOptions o = opt;
  if (o.x_label.empty()) o.x_label = ps.feature_name(x_axis);
  if (o.y_label.empty()) o.y_label = ps.feature_name(y_axis);
  Canvas cv(o, xr, yr);

  std::set<std::string> labels;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps.label(i)) labels.insert(*ps.label(i));
  std::map<std::string, std::string> color;
  std::size_t next = 0;
  for (const auto& l : labels) color[l] = kPalette[next++ % kPaletteSize];

  std::ostringstream os;
  cv.open(os);
  cv.frame(os);
  os << "<g stroke=\"#555555\" stroke-width=\"0.8\">\n";
  for (const auto& e : edges)
    os << "<line x1=\"" << num(cv.px(ps.coord(e.u, x_axis))) << "\" y1=\"" << num(cv.py(ps.coord(e.u, y_axis)))
       << "\" x2=\"" << num(cv.px(ps.coord(e.v, x_axis))) << "\" y2=\"" << num(cv.py(ps.coord(e.v, y_axis)))
       << "\"/>\n";
  os << "</g>\n<g>\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& l = ps.label(i);
    os << "<circle cx=\"" << num(cv.px(ps.coord(i, x_axis))) << "\" cy=\"" << num(cv.py(ps.coord(i, y_axis)))
       << "\" r=\"1.8\" fill=\"" << (l ? color[*l] : std::string("black")) << "\"/>\n";
  }
  os << "</g>\n";
  std::vector<std::pair<std::string, std::string>> entries(color.begin(), color.end());
  cv.legend(os, entries);
  os << "</svg>\n";
  return os.str();
}

std::string render_histograms_svg(std::span<const HistogramSeries> series, const SvgOptions& opt) {
  Range xr{0.0, 1.0}, yr{0.0, 1.0};
  double ymax = 0.0;
  if (!series.empty()) {
    xr = {series.front().histogram.lo(), series.front().histogram.hi()};
    for (const auto& s : series) {
      xr.lo = std::min(xr.lo, s.histogram.lo());
      xr.hi = std::max(xr.hi, s.histogram.hi());
      for (double b : s.histogram.bins()) ymax = std::max(ymax, b);
    }
  }
  yr.hi = ymax > 0.0 ? 1.1 * ymax : 1.0;
  Canvas cv(opt, xr, yr);

  std::ostringstream os;
  cv.open(os);
  cv.frame(os);
  std::vector<std::pair<std::string, std::string>> entries;
  bool overflow_marked = false;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Histogram& h = series[k].histogram;
    const std::string color = kPalette[k % kPaletteSize];
    entries.emplace_back(series[k].label, color);
    std::ostringstream d;
    d << 'M' << num(cv.px(h.lo())) << ' ' << num(cv.py(0.0));
    for (std::size_t i = 0; i < h.bin_count(); ++i) {
      const double x_hi = i + 1 == h.bin_count() ? h.hi() : h.bin_lo(i + 1);
      d << 'L' << num(cv.px(h.bin_lo(i))) << ' ' << num(cv.py(h.content(i)));
      d << 'L' << num(cv.px(x_hi)) << ' ' << num(cv.py(h.content(i)));
    }
    d << 'L' << num(cv.px(h.hi())) << ' ' << num(cv.py(0.0));
    os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    if (h.folds_overflow() && !overflow_marked) {
      const double xm = 0.5 * (h.bin_lo(h.bin_count() - 1) + h.hi());
      os << "<text x=\"" << num(cv.px(xm)) << "\" y=\"" << num(cv.top() + 12.0)
         << "\" font-size=\"10\" text-anchor=\"middle\">overflow</text>\n";
      overflow_marked = true;
    }
  }
  cv.legend(os, entries);
  os << "</svg>\n";
  return os.str();
}

std::string render_curves_svg(std::span<const CurveSeries> series, const SvgOptions& opt) {
  Range xr{0.0, 1.0}, yr{0.0, 1.0};
  bool any = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!any) {
        xr = {x, x};
        yr = {y, y};
        any = true;
      }
      xr.lo = std::min(xr.lo, x);
      xr.hi = std::max(xr.hi, x);
      yr.lo = std::min(yr.lo, y);
      yr.hi = std::max(yr.hi, y);
    }
  Canvas cv(opt, xr, yr);
  std::ostringstream os;
  cv.open(os);
  cv.frame(os);
  std::vector<std::pair<std::string, std::string>> entries;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::string color = kPalette[k % kPaletteSize];
    entries.emplace_back(series[k].label, color);
    std::ostringstream d;
    char cmd = 'M';
    for (const auto& [x, y] : series[k].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        cmd = 'M';
        continue;
      }
      d << cmd << num(cv.px(x)) << ' ' << num(cv.py(y));
      cmd = 'L';
    }
    if (!d.str().empty())
      os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
  }
  cv.legend(os, entries);
  os << "</svg>\n";
  return os.str();
}

}  // namespace mstkit
