#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mstkit/error.hpp"
#include "mstkit/ks_test.hpp"
#include "mstkit/mst.hpp"
#include "mstkit/synth.hpp"
#include "mstkit/tree_stats.hpp"
#include "oracles.hpp"

using namespace mstkit;

namespace {

std::vector<double> column(const PointSet& ps, std::size_t f = 0) {
  std::vector<double> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) out[i] = ps.coord(i, f);
  return out;
}

GeneratorSpec seeded(const char* name, std::uint64_t seed) {
  auto s = preset(name).value();
  s.seed = seed;
  return s;
}

double std_dev(const std::vector<WeightedValue>& v) {
  double m = 0.0;
  for (const auto& x : v) m += x.value;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (const auto& x : v) s += (x.value - m) * (x.value - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double fraction_of_degree(const Tree& t, double d) {
  const auto ds = degrees(t);
  return static_cast<double>(std::count_if(ds.begin(), ds.end(), [d](const auto& x) { return x.value == d; })) /
         static_cast<double>(ds.size());
}

}  // namespace

TEST_CASE("sin^2 density normalisation constant") {
  const double integral =
      oracle::simpson([](double x) { return std::pow(std::sin(std::numbers::pi * x / 8.0), 2); }, 0.0, 12.0);
  CHECK(integral == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(kSin2Normalization == doctest::Approx(1.0 / integral));
  CHECK(oracle::cdf_sin2(12.0) == 1.0);
  CHECK(oracle::cdf_sin2(12.0 - 1e-12) == doctest::Approx(1.0));
}

TEST_CASE("uniform sample mean") {
  const auto xs = column(sample_1d(GeneratorKind::Uniform1d, 100000, 5));
  CHECK(std::abs(oracle::mean(xs) - 6.0) < 0.05);
  CHECK(*std::min_element(xs.begin(), xs.end()) >= 0.0);
  CHECK(*std::max_element(xs.begin(), xs.end()) <= 12.0);
}

TEST_CASE("1D samplers follow their analytic CDFs") {
  struct Case {
    GeneratorKind kind;
    double (*cdf)(double);
  };
  for (const Case c : {Case{GeneratorKind::Uniform1d, oracle::cdf_uniform},
                       Case{GeneratorKind::Exponential1d, oracle::cdf_exponential},
                       Case{GeneratorKind::Sin2_1d, oracle::cdf_sin2}}) {
    CAPTURE(to_string(c.kind));
    const auto xs = column(sample_1d(c.kind, 100000, 77));
    const auto ks = ks_test(xs, c.cdf);
    CHECK(ks.statistic == doctest::Approx(oracle::ks_statistic(xs, c.cdf)).epsilon(1e-12));
    CHECK(ks.p_value > 0.001);
  }
}

TEST_CASE("same seed is bit-identical, different seeds differ") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    auto spec = preset(name).value();
    spec.count = std::min<std::size_t>(spec.count, 2000);
    spec.seed = 9;
    const PointSet a = generate(spec);
    const PointSet b = generate(spec);
    REQUIRE(a.size() == b.size());
    CHECK(std::equal(a.raw_coords().begin(), a.raw_coords().end(), b.raw_coords().begin()));
    spec.seed = 10;
    const PointSet c = generate(spec);
    if (spec.sigma > 0.0 || (spec.kind != GeneratorKind::Grid && spec.kind != GeneratorKind::QuadraticGrid))
      CHECK_FALSE(std::equal(a.raw_coords().begin(), a.raw_coords().end(), c.raw_coords().begin()));
  }
}

TEST_CASE("unperturbed 2x2 grid is the exact lattice") {
  const PointSet ps = gen_grid(2, 2, 1.0, 1.0, 0.0, 1);
  REQUIRE(ps.size() == 4);
  CHECK(column(ps, 0) == std::vector<double>{0, 1, 0, 1});
  CHECK(column(ps, 1) == std::vector<double>{0, 0, 1, 1});
}

TEST_CASE("grid presets") {
  CHECK(generate(seeded("sparse-grid", 1)).size() == 800);
  CHECK(generate(seeded("dense-grid", 1)).size() == 800);
  CHECK(generate(seeded("quadratic-grid", 1)).size() == 800);
  CHECK(preset("sparse-grid")->sigma == 0.2);
  CHECK_FALSE(preset("nope").has_value());
}

TEST_CASE("quadratic column positions") {
  const auto xs = quadratic_columns(5, 1.0);
  REQUIRE(xs.size() == 5);
  const std::vector<double> expect{0.0, 1.0 / 16, 4.0 / 16, 9.0 / 16, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(xs[i] == doctest::Approx(expect[i]).epsilon(1e-15));
}

TEST_CASE("disc points stay within radius + 5 sigma") {
  const PointSet ps = gen_disc(4000, 3.0, -2.0, 20.0, 0.2, 8);
  for (std::size_t i = 0; i < ps.size(); ++i)
    CHECK(std::hypot(ps.coord(i, 0) - 3.0, ps.coord(i, 1) + 2.0) <= 20.0 + 5 * 0.2);
  // Uniform over area: about a quarter of the points inside half the radius.
  std::size_t inner = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) inner += std::hypot(ps.coord(i, 0) - 3.0, ps.coord(i, 1) + 2.0) < 10.0;
  CHECK(std::abs(static_cast<double>(inner) - 1000.0) < 3 * std::sqrt(4000 * 0.25 * 0.75) + 10);
}

TEST_CASE("strip stays in its rectangle") {
  const PointSet ps = generate(seeded("strip", 2));
  CHECK(ps.size() == 4000);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(ps.coord(i, 0) >= -2.0 - 1.0);
    CHECK(ps.coord(i, 0) <= 2.0 + 1.0);
  }
}

TEST_CASE("3D discs append a z column") {
  const PointSet e = generate(seeded("disc3d-exp", 3));
  CHECK(e.size() == 4000);
  CHECK(e.dimension() == 3);
  CHECK(e.feature_name(2) == "z");
  const auto z = column(e, 2);
  CHECK(*std::min_element(z.begin(), z.end()) >= 0.0);
  CHECK(std::abs(oracle::mean(z) - 2.5) < 0.2);
  const auto zu = column(generate(seeded("disc3d-uniform", 3)), 2);
  CHECK(*std::max_element(zu.begin(), zu.end()) <= 10.0);
}

TEST_CASE("two-component mixture labels") {
  const auto bg = seeded("disc", 0);
  const auto sig = seeded("strip", 0);
  auto count_signal = [](const PointSet& ps) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) n += ps.label(i) == "signal";
    return n;
  };
  CHECK(count_signal(gen_two_component(500, 0.0, bg, sig, 1)) == 0);
  CHECK(count_signal(gen_two_component(500, 1.0, bg, sig, 1)) == 500);
  const std::size_t n = count_signal(gen_two_component(10000, 0.3, bg, sig, 4));
  CHECK(n >= 2850);
  CHECK(n <= 3150);
  CHECK_THROWS_AS(gen_two_component(10, 1.5, bg, sig, 1), Error);
}

TEST_CASE("invalid generator arguments") {
  CHECK_THROWS_AS(sample_1d(GeneratorKind::Uniform1d, 0, 1), Error);
  CHECK_THROWS_AS(gen_disc(10, 0, 0, 0.0, 0.1, 1), Error);
  CHECK_THROWS_AS(gen_disc(10, 0, 0, 1.0, -0.1, 1), Error);
  CHECK_THROWS_AS(sample_1d(GeneratorKind::Disc, 10, 1), Error);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {GeneratorKind::Uniform1d, GeneratorKind::Exponential1d, GeneratorKind::Sin2_1d, GeneratorKind::Grid,
                 GeneratorKind::QuadraticGrid, GeneratorKind::Disc, GeneratorKind::Strip, GeneratorKind::Disc3d})
    CHECK(parse_generator_kind(to_string(k)) == k);
}

TEST_CASE("grid presets differ in the expected directions") {
  const Tree sparse = build_mst_kruskal(generate(seeded("sparse-grid", 11)));
  const Tree dense = build_mst_kruskal(generate(seeded("dense-grid", 12)));
  const Tree quad = build_mst_kruskal(generate(seeded("quadratic-grid", 13)));
  CHECK(mean_edge_length(dense) < mean_edge_length(sparse));
  CHECK(std_dev(log_normalized_lengths(quad)) > std_dev(log_normalized_lengths(sparse)));
  CHECK(fraction_of_degree(quad, 2.0) > fraction_of_degree(sparse, 2.0));
}
