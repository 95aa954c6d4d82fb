#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mstkit/geometry.hpp"

namespace mstkit {

enum class GeneratorKind { Uniform1d, Exponential1d, Sin2_1d, Grid, QuadraticGrid, Disc, Strip, Disc3d };
enum class ZDistribution { Uniform, Exponential };

/// Declarative description of one synthetic sample.
///
/// Field use per kind:
///  - 1D kinds: count. Values lie on [0, 12].
///  - Grid / QuadraticGrid: cols, rows, origin (x0, y0), x_extent, y_extent;
///    the lattice spans the extents inclusively. count is cols * rows.
///  - Disc / Disc3d: count, centre (x0, y0), radius. Disc3d adds z from
///    z_kind: uniform on [0, z_scale] or exponential with mean z_scale.
///  - Strip: count, lower-left corner (x0, y0), x_extent, y_extent.
/// sigma is the Gaussian perturbation applied to x and y (grids, discs, strip).
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Uniform1d;
  std::size_t count = 1;
  std::size_t cols = 0;
  std::size_t rows = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double x_extent = 0.0;
  double y_extent = 0.0;
  double radius = 0.0;
  ZDistribution z_kind = ZDistribution::Uniform;
  double z_scale = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr double kOneDimUpper = 12.0;

/// Normalisation constant of C sin^2(pi x / 8) on [0, 12].
inline constexpr double kSin2Normalization = 1.0 / 6.0;

PointSet sample_1d(GeneratorKind kind, std::size_t count, std::uint64_t seed);
PointSet gen_grid(std::size_t cols, std::size_t rows, double x_extent, double y_extent, double sigma,
                  std::uint64_t seed, double x0 = 0.0, double y0 = 0.0);
PointSet gen_quadratic_grid(std::size_t cols, std::size_t rows, double x_extent, double y_extent, double sigma,
                            std::uint64_t seed, double x0 = 0.0, double y0 = 0.0);
PointSet gen_disc(std::size_t count, double cx, double cy, double radius, double sigma, std::uint64_t seed);
PointSet gen_strip(std::size_t count, double x0, double y0, double width, double height, double sigma,
                   std::uint64_t seed);
PointSet gen_disc3d(std::size_t count, double cx, double cy, double radius, double sigma, ZDistribution z_kind,
                    double z_scale, std::uint64_t seed);

/// Column positions of the quadratic grid: x0 + extent * (j / (cols - 1))^2.
std::vector<double> quadratic_columns(std::size_t cols, double x_extent, double x0 = 0.0);

PointSet generate(const GeneratorSpec& spec);

/// Mixture labelled "background" / "signal"; each event is signal with
/// probability alpha_true. Component specs supply geometry; their count and
/// seed fields are ignored.
PointSet gen_two_component(std::size_t count, double alpha_true, const GeneratorSpec& background,
                           const GeneratorSpec& signal, std::uint64_t seed);

/// Named presets for the reference examples; seed is left at 0.
std::optional<GeneratorSpec> preset(const std::string& name);
std::vector<std::string> preset_names();

const char* to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(const std::string& s);

}  // namespace mstkit
