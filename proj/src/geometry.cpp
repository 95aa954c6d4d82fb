#include "mstkit/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mstkit/error.hpp"

namespace mstkit {

PointSet::PointSet(std::size_t dimension, std::vector<std::string> feature_names)
    : dimension_(dimension), feature_names_(std::move(feature_names)) {
  if (dimension_ == 0) fail(ErrorCode::InvalidArgument, "point set dimension must be >= 1");
  if (!feature_names_.empty() && feature_names_.size() != dimension_)
    fail(ErrorCode::InvalidArgument, "feature name count does not match dimension");
}

void PointSet::add(std::span<const double> coords, double weight, std::optional<std::string> label) {
  if (coords.size() != dimension_)
    fail(ErrorCode::InvalidArgument, "point has dimension " + std::to_string(coords.size()) +
                                         ", expected " + std::to_string(dimension_));
  if (!(weight >= 0.0) || !std::isfinite(weight))
    fail(ErrorCode::InvalidArgument, "point weight must be finite and non-negative");
  for (double x : coords)
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "point coordinates must be finite");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  weights_.push_back(weight);
  labels_.push_back(std::move(label));
}

void PointSet::reserve(std::size_t n) {
  coords_.reserve(n * dimension_);
  weights_.reserve(n);
  labels_.reserve(n);
}

Point PointSet::point(std::size_t i) const {
  auto c = coords(i);
  return Point{{c.begin(), c.end()}, weights_[i], labels_[i]};
}

bool PointSet::has_labels() const noexcept {
  return std::any_of(labels_.begin(), labels_.end(), [](const auto& l) { return l.has_value(); });
}

std::string PointSet::feature_name(std::size_t axis) const {
  if (axis < feature_names_.size()) return feature_names_[axis];
  return "x" + std::to_string(axis);
}

std::optional<std::size_t> PointSet::feature_index(const std::string& name) const {
  for (std::size_t a = 0; a < dimension_; ++a)
    if (feature_name(a) == name) return a;
  return std::nullopt;
}

PointSet PointSet::with_weights(std::span<const double> weights) const {
  if (weights.size() != size()) fail(ErrorCode::InvalidArgument, "weight count does not match point count");
  PointSet out = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      fail(ErrorCode::InvalidArgument, "point weight must be finite and non-negative");
    out.weights_[i] = weights[i];
  }
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(ErrorCode::InvalidArgument, "dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                         std::to_string(b.size()));
  return std::sqrt(squared_distance(a, b));
}

RescaleResult rescale_features(const PointSet& ps, RescaleMode mode) {
  const std::size_t n = ps.dimension();
  const std::size_t m = ps.size();
  std::vector<AffineMap> maps(n);

  if (mode == RescaleMode::None) return {ps, maps};
  if (m == 0) fail(ErrorCode::InvalidArgument, "cannot rescale an empty point set");
  if (mode == RescaleMode::UnitVariance && m < 2)
    fail(ErrorCode::InvalidArgument, "unit-variance rescaling needs at least two points");

  for (std::size_t a = 0; a < n; ++a) {
    if (mode == RescaleMode::UnitRange) {
      double lo = ps.coord(0, a), hi = lo;
      for (std::size_t i = 1; i < m; ++i) {
        lo = std::min(lo, ps.coord(i, a));
        hi = std::max(hi, ps.coord(i, a));
      }
      maps[a] = {lo, hi - lo};
    } else {
      double mean = 0.0;
      for (std::size_t i = 0; i < m; ++i) mean += ps.coord(i, a);
      mean /= static_cast<double>(m);
      double ss = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = ps.coord(i, a) - mean;
        ss += d * d;
      }
      maps[a] = {mean, std::sqrt(ss / static_cast<double>(m - 1))};
    }
  }

  PointSet out(n, ps.feature_names());
  out.reserve(m);
  std::vector<double> buf(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a) buf[a] = maps[a].apply(ps.coord(i, a));
    out.add(buf, ps.weight(i), ps.label(i));
  }
  return {std::move(out), std::move(maps)};
}

PointSet select_features(const PointSet& ps, std::span<const std::size_t> features) {
  if (features.empty()) fail(ErrorCode::InvalidArgument, "no features selected");
  std::vector<std::string> names;
  for (std::size_t f : features) {
    if (f >= ps.dimension()) fail(ErrorCode::InvalidArgument, "feature index out of range");
    names.push_back(ps.feature_name(f));
  }
  PointSet out(features.size(), std::move(names));
  out.reserve(ps.size());
  std::vector<double> buf(features.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t a = 0; a < features.size(); ++a) buf[a] = ps.coord(i, features[a]);
    out.add(buf, ps.weight(i), ps.label(i));
  }
  return out;
}

PointSet cut_min(const PointSet& ps, std::size_t feature, double threshold) {
  if (feature >= ps.dimension()) fail(ErrorCode::InvalidArgument, "feature index out of range");
  PointSet out(ps.dimension(), ps.feature_names());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.coord(i, feature) > threshold) out.add(ps.coords(i), ps.weight(i), ps.label(i));
  }
  return out;
}

const char* to_string(RescaleMode mode) {
  switch (mode) {
    case RescaleMode::None: return "none";
    case RescaleMode::UnitRange: return "unit-range";
    case RescaleMode::UnitVariance: return "unit-variance";
  }
  return "none";
}

std::optional<RescaleMode> parse_rescale_mode(const std::string& s) {
  if (s == "none") return RescaleMode::None;
  if (s == "unit-range") return RescaleMode::UnitRange;
  if (s == "unit-variance") return RescaleMode::UnitVariance;
  return std::nullopt;
}

}  // namespace mstkit
