#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mstkit {

/// One event: coordinates in feature space plus a non-negative weight and an
/// optional process label.
struct Point {
  std::vector<double> coords;
  double weight = 1.0;
  std::optional<std::string> label;
};

/// Ordered, fixed-dimension collection of points. Coordinates are stored
/// row-major in one contiguous buffer so pairwise loops stay cache friendly.
///
/// Discrete features are accepted, but they tend to create artificial
/// filaments in the tree; prefer continuous quantities.
class PointSet {
 public:
  explicit PointSet(std::size_t dimension, std::vector<std::string> feature_names = {});

  void add(std::span<const double> coords, double weight = 1.0,
           std::optional<std::string> label = std::nullopt);
  void add(const Point& p) { add(p.coords, p.weight, p.label); }
  void reserve(std::size_t n);

  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<const double> coords(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  double coord(std::size_t i, std::size_t axis) const { return coords_[i * dimension_ + axis]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::optional<std::string>& label(std::size_t i) const { return labels_[i]; }
  Point point(std::size_t i) const;

  bool has_labels() const noexcept;
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  /// Column name for `axis`; falls back to x0, x1, ... when unnamed.
  std::string feature_name(std::size_t axis) const;
  std::optional<std::size_t> feature_index(const std::string& name) const;

  std::span<const double> raw_coords() const noexcept { return coords_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Copy with every weight replaced. Sizes must match.
  PointSet with_weights(std::span<const double> weights) const;

 private:
  std::size_t dimension_;
  std::vector<std::string> feature_names_;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<std::optional<std::string>> labels_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Euclidean distance; throws InvalidArgument on dimension mismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);
inline double euclidean_distance(const Point& a, const Point& b) {
  return euclidean_distance(a.coords, b.coords);
}

/// Copy keeping only the listed feature columns, in that order.
PointSet select_features(const PointSet& ps, std::span<const std::size_t> features);

/// Copy keeping points whose `feature` value is strictly above `threshold`.
PointSet cut_min(const PointSet& ps, std::size_t feature, double threshold);

enum class RescaleMode { None, UnitRange, UnitVariance };

/// Per-feature map x' = (x - offset) / scale. A zero scale marks a constant
/// feature, which maps to 0.
struct AffineMap {
  double offset = 0.0;
  double scale = 1.0;

  double apply(double x) const { return scale == 0.0 ? 0.0 : (x - offset) / scale; }
  double invert(double y) const { return y * scale + offset; }
};

struct RescaleResult {
  PointSet points;
  std::vector<AffineMap> maps;
};

RescaleResult rescale_features(const PointSet& ps, RescaleMode mode);

const char* to_string(RescaleMode mode);
std::optional<RescaleMode> parse_rescale_mode(const std::string& s);

}  // namespace mstkit
