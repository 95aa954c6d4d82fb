#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "mstkit/error.hpp"
#include "mstkit/histogram.hpp"
#include "mstkit/mst.hpp"
#include "mstkit/tree_stats.hpp"
#include "oracles.hpp"

using namespace mstkit;

namespace {

// Tree over explicit edges; lengths come from the coordinates.
Tree make_tree(const std::vector<std::vector<double>>& pts, const std::vector<std::pair<std::size_t, std::size_t>>& es,
               const std::vector<double>& weights = {}) {
  auto ps = std::make_shared<PointSet>(pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i) ps->add(pts[i], weights.empty() ? 1.0 : weights[i]);
  std::vector<Edge> edges;
  for (auto [u, v] : es) {
    edges.push_back({std::min(u, v), std::max(u, v), euclidean_distance(ps->coords(u), ps->coords(v)),
                     ps->weight(u) * ps->weight(v)});
  }
  return Tree(ps, std::move(edges));
}

Tree cloud_tree(std::size_t m, std::size_t dim, std::uint64_t seed, double scale = 1.0) {
  PointSet ps(dim);
  for (const auto& p : oracle::random_cloud(m, dim, seed, scale)) ps.add(p);
  return build_mst_kruskal(std::move(ps));
}

std::vector<double> values(const std::vector<WeightedValue>& wv) {
  std::vector<double> out;
  for (const auto& x : wv) out.push_back(x.value);
  return out;
}

}  // namespace

TEST_CASE("edge lengths of the collinear chain") {
  const Tree t = make_tree({{0.0}, {1.0}, {3.0}}, {{0, 1}, {1, 2}});
  CHECK(values(edge_lengths(t)) == std::vector<double>{1.0, 2.0});
  CHECK(mean_edge_length(t) == 1.5);
}

TEST_CASE("2x2 unit grid has three unit edges") {
  const Tree t = build_mst_kruskal([] {
    PointSet ps(2);
    for (double x : {0.0, 1.0})
      for (double y : {0.0, 1.0}) ps.add(std::vector<double>{x, y});
    return ps;
  }());
  CHECK(values(edge_lengths(t)) == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("normalized lengths of {1, 3}") {
  const Tree t = make_tree({{0.0}, {1.0}, {4.0}}, {{0, 1}, {1, 2}});
  CHECK(values(normalized_lengths(t)) == std::vector<double>{0.5, 1.5});
  const auto ln = values(log_normalized_lengths(t));
  CHECK(ln[0] == doctest::Approx(std::log(0.5)));
  CHECK(ln[1] == doctest::Approx(std::log(1.5)));
  CHECK(mean_log_normalized_length(t) == doctest::Approx((std::log(0.5) + std::log(1.5)) / 2));
}

TEST_CASE("weighted mean of normalized lengths is one") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Tree t = cloud_tree(500, 2, seed);
    double s = 0.0, w = 0.0;
    for (const auto& x : normalized_lengths(t)) {
      s += x.value * x.weight;
      w += x.weight;
    }
    CHECK(std::abs(s / w - 1.0) < 1e-12);
  }
}

TEST_CASE("edge weights enter the mean") {
  // Lengths 1 and 3; weights 1 and 0 -> <l> = 1.
  const Tree t = make_tree({{0.0}, {1.0}, {4.0}}, {{0, 1}, {1, 2}}, {1.0, 1.0, 0.0});
  CHECK(mean_edge_length(t) == 1.0);
  CHECK(mean_log_normalized_length(t) == doctest::Approx(0.0));
}

TEST_CASE("normalized log lengths are invariant under global scaling") {
  const Tree a = cloud_tree(400, 3, 11, 1.0);
  const Tree b = cloud_tree(400, 3, 11, 1024.0);  // power of two keeps the ratios exact
  Histogram ha(-6.0, 3.0, 45, true), hb(-6.0, 3.0, 45, true);
  ha.fill(log_normalized_lengths(a));
  hb.fill(log_normalized_lengths(b));
  CHECK(ha.bins() == hb.bins());
  CHECK(ha.underflow() == hb.underflow());
}

TEST_CASE("zero-length edges: -inf in ln l_bar, skipped by mu_l") {
  const Tree t = make_tree({{0.0}, {0.0}, {2.0}}, {{0, 1}, {1, 2}});
  const auto ln = values(log_normalized_lengths(t));
  CHECK(std::isinf(ln[0]));
  CHECK(ln[0] < 0);
  std::size_t skipped = 0;
  const double mu = mean_log_normalized_length(t, &skipped);
  CHECK(skipped == 1);
  CHECK(mu == doctest::Approx(std::log(2.0)));  // l_bar = 2 / 1
}

TEST_CASE("edge-free tree is a numeric error") {
  const Tree t = make_tree({{0.0}}, {});
  CHECK_THROWS_AS(edge_lengths(t), Error);
  CHECK_THROWS_AS(mean_edge_length(t), Error);
}

TEST_CASE("degrees of a path and a star") {
  const Tree path = make_tree({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(values(degrees(path)) == std::vector<double>{1, 2, 2, 2, 1});
  const Tree star = make_tree({{0, 0}, {1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(values(degrees(star)) == std::vector<double>{3, 1, 1, 1});
}

TEST_CASE("handshake lemma") {
  const Tree t = cloud_tree(321, 2, 4);
  double s = 0.0;
  for (double d : values(degrees(t))) s += d;
  CHECK(s == 2.0 * 320);
}

TEST_CASE("a path has exactly one branch with every vertex") {
  std::vector<std::vector<double>> pts;
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 0; i < 100; ++i) {
    pts.push_back({double(i)});
    if (i) es.emplace_back(i - 1, i);
  }
  const auto bs = extract_branches(make_tree(pts, es));
  REQUIRE(bs.branches.size() == 1);
  CHECK(bs.branches[0].vertex_path.size() == 100);
  CHECK(bs.branches[0].length == doctest::Approx(99.0));
}

TEST_CASE("star of four vertices has three unit branches") {
  const auto bs = extract_branches(make_tree({{0, 0}, {1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {0, 2}, {0, 3}}));
  REQUIRE(bs.branches.size() == 3);
  for (const auto& b : bs.branches) CHECK(b.length == doctest::Approx(1.0));
}

TEST_CASE("H-shaped tree: four branches, junction edge in none") {
  //  0       5
  //   \     /
  //    2---3        edge (2,3) joins the two junctions
  //   /     \.
  //  1       4      plus 6 hanging off 4 (two-edge branch)
  //           \.
  //            6
  const Tree t = make_tree({{-1, 1}, {-1, -1}, {0, 0}, {2, 0}, {3, -1}, {3, 1}, {4, -2}},
                           {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}});
  const auto bs = extract_branches(t);
  REQUIRE(bs.branches.size() == 4);
  std::size_t junction_edge = t.edges().size();
  for (std::size_t i = 0; i < t.edges().size(); ++i)
    if (t.edges()[i].u == 2 && t.edges()[i].v == 3) junction_edge = i;
  REQUIRE(junction_edge < t.edges().size());
  std::size_t edges_in_branches = 0;
  for (const auto& b : bs.branches) {
    edges_in_branches += b.edge_indices.size();
    CHECK(std::find(b.edge_indices.begin(), b.edge_indices.end(), junction_edge) == b.edge_indices.end());
  }
  CHECK(edges_in_branches == 5);
  const auto lengths = values(branch_lengths(bs));
  CHECK(std::count_if(lengths.begin(), lengths.end(), [](double b) { return std::abs(b - 2 * std::sqrt(2.0)) < 1e-12; }) ==
        1);
}

TEST_CASE("branch weight is the product of its edge weights") {
  const Tree t = make_tree({{0.0}, {1.0}, {2.0}}, {{0, 1}, {1, 2}}, {2.0, 1.0, 3.0});
  const auto bs = extract_branches(t);
  REQUIRE(bs.branches.size() == 1);
  CHECK(bs.branches[0].weight == 6.0);
  CHECK(log_branch_lengths(bs)[0].value == doctest::Approx(std::log(2.0)));
}

TEST_CASE("summary agrees with the individual statistics") {
  const Tree t = cloud_tree(250, 2, 8);
  const auto s = summarize(t);
  CHECK(s.edge_count == 249);
  CHECK(s.mean_edge_length == doctest::Approx(mean_edge_length(t)));
  CHECK(s.mean_log_norm_length == doctest::Approx(mean_log_normalized_length(t)));
  CHECK(s.total_length == doctest::Approx(tree_total_length(t)));
  CHECK(s.branch_count == extract_branches(t).branches.size());
  double w = 0.0;
  for (const auto& [d, c] : s.degree_counts) w += c;
  CHECK(w == 250.0);
  CHECK(s.mean_log_norm_length < 0.0);  // Jensen: mean of ln(l_bar) <= ln(mean l_bar) = 0
}
