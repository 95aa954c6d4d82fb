#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mstkit/geometry.hpp"

namespace mstkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval lo < x < hi on one feature; either side may be infinite.
struct FeatureBound {
  std::size_t feature = 0;
  double lo = -kInf;
  double hi = kInf;
};

/// Box region in feature space. Points strictly inside every bound get
/// inside_weight multiplied into their weight, all others outside_weight.
struct RegionWeight {
  std::vector<FeatureBound> box;
  double inside_weight = 0.0;
  double outside_weight = 1.0;

  bool contains(std::span<const double> coords) const;
};

/// Reweights vertices only; a tree built afterwards has the same edges, with
/// edge weights following the vertex-product rule.
PointSet apply_region_weights(const PointSet& ps, const RegionWeight& rw);

/// Rectangular bin [x_lo, x_hi) x [y_lo, y_hi) on two features.
struct Bin {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

struct BinLayout {
  std::size_t x_feature = 0;
  std::size_t y_feature = 1;
  std::vector<Bin> bins;

  /// First bin containing the point, if any.
  std::optional<std::size_t> locate(std::span<const double> coords) const;
};

/// Cartesian product of edge lists; bins are numbered x-fastest.
BinLayout grid_layout(std::span<const double> x_edges, std::span<const double> y_edges, std::size_t x_feature = 0,
                      std::size_t y_feature = 1);

/// Summed point weight per bin; points outside every bin are dropped.
std::vector<double> bin_contents(const BinLayout& layout, const PointSet& ps);

/// Template pdfs B (background) and S (signal) per bin, each summing to 1,
/// with observed (possibly weighted) counts n.
struct BinnedModel {
  std::vector<double> background;
  std::vector<double> signal;
  std::vector<double> observed;

  std::size_t bin_count() const noexcept { return observed.size(); }
  /// Throws InvalidArgument on shape or normalisation problems, Numeric when
  /// an occupied bin has B_j = S_j = 0.
  void validate() const;
};

BinnedModel make_binned_model(const BinLayout& layout, const PointSet& background, const PointSet& signal,
                              const PointSet& data);

/// Observed counts set to total * ((1 - alpha) B + alpha S). B and S are
/// normalised here.
BinnedModel make_asimov_model(std::vector<double> background, std::vector<double> signal, double alpha,
                              double total);

/// Linear calibration mu_l(alpha) = intercept + slope * alpha together with the
/// observed mu and its per-tree spread.
struct MstConstraint {
  double mu_obs = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double sigma_l = 1.0;

  double mu_at(double alpha) const { return intercept + slope * alpha; }
  /// (mu_obs - mu_l(alpha))^2 / sigma_l^2
  double penalty(double alpha) const;
};

struct CalibrationSample {
  double alpha = 0.0;
  double mu_l = 0.0;
};

struct CalibrationOptions {
  std::vector<double> alphas;
  std::size_t trials = 5;
  std::size_t sample_size = 0;  // 0: size of the background pool
  std::uint64_t seed = 0;
};

struct Calibration {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double sigma_l = 0.0;  // pooled per-tree spread of mu_l across trials
  std::size_t sample_size = 0;
  std::vector<CalibrationSample> samples;
  std::vector<double> alphas;
  std::vector<double> mean_mu;
  std::vector<double> sd_mu;

  MstConstraint constraint(double mu_obs) const { return {mu_obs, slope, intercept, sigma_l}; }
};

/// For every alpha and trial: draws a mixture of sample_size events without
/// replacement from the two pools (each event is signal with probability
/// alpha), builds its tree, records mu_l. Then least-squares fits the line.
Calibration calibrate_mu_vs_alpha(const PointSet& background, const PointSet& signal,
                                  const CalibrationOptions& options);

/// Mixture draw used by the calibration, exposed for reuse.
PointSet draw_mixture(const PointSet& background, const PointSet& signal, double alpha, std::size_t count,
                      std::uint64_t seed);

enum class FitMode { Baseline, Augmented };

struct AlphaScan {
  std::size_t grid_points = 1001;   // coarse scan on [0, 1] before refinement
  std::size_t curve_points = 101;   // samples stored in FitResult::q_curve
  double search_lo = -2.0;          // bounds for the Q_min + 1 crossing search
  double search_hi = 3.0;
};

struct FitResult {
  double alpha_hat = 0.0;
  double q_min = 0.0;
  double sigma_alpha = kInf;  // +inf when Q never rises by 1
  double interval_lo = -kInf;
  double interval_hi = kInf;
  std::vector<std::pair<double, double>> q_curve;
  FitMode mode = FitMode::Baseline;
};

/// Q(alpha) = -2 sum_j n_j ln[(1 - alpha) B_j + alpha S_j]; +inf when an
/// occupied bin has non-positive mixture probability.
double q_baseline(const BinnedModel& model, double alpha);
/// Baseline plus the constraint penalty when one is given.
double q_value(const BinnedModel& model, const MstConstraint* constraint, double alpha);

/// Minimises Q over alpha in [0, 1] (grid scan, then Brent's parabolic
/// refinement) and reads sigma_alpha off the Q_min + 1 crossings.
FitResult fit_alpha(const BinnedModel& model, const std::optional<MstConstraint>& constraint,
                    const AlphaScan& scan = {});

const char* to_string(FitMode mode);

}  // namespace mstkit
