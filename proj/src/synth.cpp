#include "mstkit/synth.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "mstkit/error.hpp"
#include "mstkit/random.hpp"

namespace mstkit {
namespace {

void require_count(std::size_t count) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "generator count must be >= 1");
}

void require_sigma(double sigma) {
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "perturbation sigma must be >= 0");
}

PointSet lattice(const std::vector<double>& xs, std::size_t rows, double y_extent, double y0, double sigma,
                 std::uint64_t seed) {
  require_sigma(sigma);
  if (xs.empty() || rows == 0) fail(ErrorCode::InvalidArgument, "grid needs cols * rows >= 1");
  Rng rng(seed);
  PointSet ps(2, {"x", "y"});
  ps.reserve(xs.size() * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = rows > 1 ? y0 + y_extent * static_cast<double>(r) / static_cast<double>(rows - 1) : y0;
    for (double x : xs) {
      std::array<double, 2> p{x, y};
      if (sigma > 0.0) {
        p[0] += sigma * rng.normal();
        p[1] += sigma * rng.normal();
      }
      ps.add(p);
    }
  }
  return ps;
}

std::array<double, 2> disc_point(Rng& rng, double cx, double cy, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return {cx + r * std::cos(phi), cy + r * std::sin(phi)};
}

}  // namespace

PointSet sample_1d(GeneratorKind kind, std::size_t count, std::uint64_t seed) {
  require_count(count);
  Rng rng(seed);
  PointSet ps(1, {"x"});
  ps.reserve(count);
  const double exp_mass = -std::expm1(-kOneDimUpper);  // 1 - e^-12
  for (std::size_t i = 0; i < count; ++i) {
    double x = 0.0;
    switch (kind) {
      case GeneratorKind::Uniform1d:
        x = kOneDimUpper * rng.uniform();
        break;
      case GeneratorKind::Exponential1d:
        // Inverse CDF of e^-x truncated to [0, 12].
        x = -std::log1p(-rng.uniform() * exp_mass);
        break;
      case GeneratorKind::Sin2_1d:
        // Rejection from the uniform envelope; sin^2 <= 1.
        for (;;) {
          x = kOneDimUpper * rng.uniform();
          const double s = std::sin(std::numbers::pi * x / 8.0);
          if (rng.uniform() < s * s) break;
        }
        break;
      default:
        fail(ErrorCode::InvalidArgument, "sample_1d needs a one-dimensional generator kind");
    }
    ps.add(std::span<const double>(&x, 1));
  }
  return ps;
}

PointSet gen_grid(std::size_t cols, std::size_t rows, double x_extent, double y_extent, double sigma,
                  std::uint64_t seed, double x0, double y0) {
  std::vector<double> xs(cols);
  for (std::size_t j = 0; j < cols; ++j)
    xs[j] = cols > 1 ? x0 + x_extent * static_cast<double>(j) / static_cast<double>(cols - 1) : x0;
  return lattice(xs, rows, y_extent, y0, sigma, seed);
}

std::vector<double> quadratic_columns(std::size_t cols, double x_extent, double x0) {
  std::vector<double> xs(cols, x0);
  for (std::size_t j = 0; j < cols && cols > 1; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(cols - 1);
    xs[j] = x0 + x_extent * t * t;
  }
  return xs;
}

PointSet gen_quadratic_grid(std::size_t cols, std::size_t rows, double x_extent, double y_extent, double sigma,
                            std::uint64_t seed, double x0, double y0) {
  return lattice(quadratic_columns(cols, x_extent, x0), rows, y_extent, y0, sigma, seed);
}

PointSet gen_disc(std::size_t count, double cx, double cy, double radius, double sigma, std::uint64_t seed) {
  require_count(count);
  require_sigma(sigma);
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "disc radius must be > 0");
  Rng rng(seed);
  PointSet ps(2, {"x", "y"});
  ps.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto p = disc_point(rng, cx, cy, radius);
    if (sigma > 0.0) {
      p[0] += sigma * rng.normal();
      p[1] += sigma * rng.normal();
    }
    ps.add(p);
  }
  return ps;
}

PointSet gen_strip(std::size_t count, double x0, double y0, double width, double height, double sigma,
                   std::uint64_t seed) {
  require_count(count);
  require_sigma(sigma);
  if (!(width > 0.0) || !(height > 0.0)) fail(ErrorCode::InvalidArgument, "strip extents must be > 0");
  Rng rng(seed);
  PointSet ps(2, {"x", "y"});
  ps.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<double, 2> p{x0 + width * rng.uniform(), y0 + height * rng.uniform()};
    if (sigma > 0.0) {
      p[0] += sigma * rng.normal();
      p[1] += sigma * rng.normal();
    }
    ps.add(p);
  }
  return ps;
}

PointSet gen_disc3d(std::size_t count, double cx, double cy, double radius, double sigma, ZDistribution z_kind,
                    double z_scale, std::uint64_t seed) {
  require_count(count);
  require_sigma(sigma);
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "disc radius must be > 0");
  if (!(z_scale > 0.0)) fail(ErrorCode::InvalidArgument, "z scale must be > 0");
  Rng rng(seed);
  PointSet ps(3, {"x", "y", "z"});
  ps.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto xy = disc_point(rng, cx, cy, radius);
    std::array<double, 3> p{xy[0], xy[1], 0.0};
    if (sigma > 0.0) {
      p[0] += sigma * rng.normal();
      p[1] += sigma * rng.normal();
    }
    p[2] = z_kind == ZDistribution::Uniform ? z_scale * rng.uniform() : -z_scale * std::log(rng.uniform_open());
    ps.add(p);
  }
  return ps;
}

PointSet generate(const GeneratorSpec& s) {
  switch (s.kind) {
    case GeneratorKind::Uniform1d:
    case GeneratorKind::Exponential1d:
    case GeneratorKind::Sin2_1d:
      return sample_1d(s.kind, s.count, s.seed);
    case GeneratorKind::Grid:
      return gen_grid(s.cols, s.rows, s.x_extent, s.y_extent, s.sigma, s.seed, s.x0, s.y0);
    case GeneratorKind::QuadraticGrid:
      return gen_quadratic_grid(s.cols, s.rows, s.x_extent, s.y_extent, s.sigma, s.seed, s.x0, s.y0);
    case GeneratorKind::Disc:
      return gen_disc(s.count, s.x0, s.y0, s.radius, s.sigma, s.seed);
    case GeneratorKind::Strip:
      return gen_strip(s.count, s.x0, s.y0, s.x_extent, s.y_extent, s.sigma, s.seed);
    case GeneratorKind::Disc3d:
      return gen_disc3d(s.count, s.x0, s.y0, s.radius, s.sigma, s.z_kind, s.z_scale, s.seed);
  }
  fail(ErrorCode::InvalidArgument, "unknown generator kind");
}

PointSet gen_two_component(std::size_t count, double alpha_true, const GeneratorSpec& background,
                           const GeneratorSpec& signal, std::uint64_t seed) {
  require_count(count);
  if (!(alpha_true >= 0.0 && alpha_true <= 1.0)) fail(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");

  Rng rng(derive_seed(seed, 0));
  std::vector<char> is_signal(count);
  std::size_t n_sig = 0;
  for (auto& flag : is_signal) {
    flag = rng.uniform() < alpha_true;
    n_sig += flag;
  }
  const std::size_t n_bg = count - n_sig;

  auto make = [](GeneratorSpec spec, std::size_t n, std::uint64_t s) {
    if (spec.kind == GeneratorKind::Grid || spec.kind == GeneratorKind::QuadraticGrid)
      fail(ErrorCode::InvalidArgument, "mixture components must be sampled distributions, not lattices");
    spec.count = n;
    spec.seed = s;
    return generate(spec);
  };
  std::optional<PointSet> bg, sg;
  if (n_bg > 0) bg = make(background, n_bg, derive_seed(seed, 1));
  if (n_sig > 0) sg = make(signal, n_sig, derive_seed(seed, 2));
  const PointSet& any = bg ? *bg : *sg;
  if (bg && sg && bg->dimension() != sg->dimension())
    fail(ErrorCode::InvalidArgument, "mixture components have different dimensions");

  PointSet out(any.dimension(), any.feature_names());
  out.reserve(count);
  std::size_t ib = 0, is = 0;
  for (char flag : is_signal) {
    if (flag)
      out.add(sg->coords(is++), 1.0, std::string("signal"));
    else
      out.add(bg->coords(ib++), 1.0, std::string("background"));
  }
  return out;
}

std::optional<GeneratorSpec> preset(const std::string& name) {
  GeneratorSpec s;
  if (name == "uniform-1d" || name == "exp-1d" || name == "sin2-1d") {
    s.kind = name == "uniform-1d" ? GeneratorKind::Uniform1d
             : name == "exp-1d"   ? GeneratorKind::Exponential1d
                                  : GeneratorKind::Sin2_1d;
    s.count = 100000;
    return s;
  }
  if (name == "sparse-grid" || name == "dense-grid" || name == "quadratic-grid") {
    s.kind = name == "quadratic-grid" ? GeneratorKind::QuadraticGrid : GeneratorKind::Grid;
    s.cols = 20;
    s.rows = 40;
    s.count = 800;
    s.x_extent = 19.0;
    s.y_extent = 39.0;
    s.sigma = 0.2;
    if (name == "dense-grid") {
      s.x_extent = 3.0;
      s.x0 = 8.0;
    }
    return s;
  }
  if (name == "disc" || name == "disc3d-uniform" || name == "disc3d-exp") {
    s.kind = name == "disc" ? GeneratorKind::Disc : GeneratorKind::Disc3d;
    s.count = 4000;
    s.radius = 20.0;
    s.sigma = 0.2;
    s.z_kind = name == "disc3d-exp" ? ZDistribution::Exponential : ZDistribution::Uniform;
    s.z_scale = name == "disc3d-exp" ? 2.5 : 10.0;
    return s;
  }
  if (name == "strip") {
    s.kind = GeneratorKind::Strip;
    s.count = 4000;
    s.x0 = -2.0;
    s.y0 = 0.0;
    s.x_extent = 4.0;
    s.y_extent = 100.0;
    s.sigma = 0.2;
    return s;
  }
  if (name == "demo-background") {
    s.kind = GeneratorKind::Disc;
    s.count = 6000;
    s.radius = 20.0;
    return s;
  }
  if (name == "demo-signal") {
    s.kind = GeneratorKind::Disc;
    s.count = 6000;
    s.x0 = 12.0;
    s.radius = 6.0;
    return s;
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"uniform-1d", "exp-1d",         "sin2-1d",    "sparse-grid",     "dense-grid",  "quadratic-grid",
          "disc",       "disc3d-uniform", "disc3d-exp", "strip", "demo-background", "demo-signal"};
}

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Uniform1d: return "uniform1d";
    case GeneratorKind::Exponential1d: return "exponential1d";
    case GeneratorKind::Sin2_1d: return "sin2_1d";
    case GeneratorKind::Grid: return "grid";
    case GeneratorKind::QuadraticGrid: return "quadratic_grid";
    case GeneratorKind::Disc: return "disc";
    case GeneratorKind::Strip: return "strip";
    case GeneratorKind::Disc3d: return "disc3d";
  }
  return "?";
}

std::optional<GeneratorKind> parse_generator_kind(const std::string& s) {
  for (auto k : {GeneratorKind::Uniform1d, GeneratorKind::Exponential1d, GeneratorKind::Sin2_1d, GeneratorKind::Grid,
                 GeneratorKind::QuadraticGrid, GeneratorKind::Disc, GeneratorKind::Strip, GeneratorKind::Disc3d})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

}  // namespace mstkit
