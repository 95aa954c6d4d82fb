#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mstkit/geometry.hpp"
#include "mstkit/histogram.hpp"
#include "mstkit/mst.hpp"

namespace mstkit {

struct SvgOptions {
  double width = 640.0;
  double height = 480.0;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string provenance;  // embedded as an XML comment
};

/// Tree projected on (x_axis, y_axis): one <line> per edge, one <circle> per
/// vertex coloured by label. Frame and ticks use <rect>/<path> only, so the
/// number of <line> elements equals the number of edges.
std::string render_tree_svg(const PointSet& ps, std::span<const Edge> edges, std::size_t x_axis, std::size_t y_axis,
                            const SvgOptions& opt = {});

struct HistogramSeries {
  std::string label;
  Histogram histogram;
};

/// Overlaid step histograms; a folded overflow bin is marked.
std::string render_histograms_svg(std::span<const HistogramSeries> series, const SvgOptions& opt = {});

struct CurveSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Overlaid polylines, e.g. Q(alpha) curves. Non-finite points are skipped.
std::string render_curves_svg(std::span<const CurveSeries> series, const SvgOptions& opt = {});

}  // namespace mstkit
