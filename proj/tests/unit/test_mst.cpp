#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "mstkit/analysis.hpp"
#include "mstkit/disjoint_set.hpp"
#include "mstkit/error.hpp"
#include "mstkit/mst.hpp"
#include "oracles.hpp"

using namespace mstkit;

namespace {

PointSet to_points(const oracle::Coords& pts) {
  PointSet ps(pts.front().size());
  for (const auto& p : pts) ps.add(p);
  return ps;
}

std::set<std::pair<std::size_t, std::size_t>> edge_set(const Tree& t) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& e : t.edges()) s.emplace(e.u, e.v);
  return s;
}

}  // namespace

TEST_CASE("disjoint set merges and counts components") {
  DisjointSet ds(5);
  CHECK(ds.components() == 5);
  CHECK(ds.unite(0, 1));
  CHECK(ds.unite(3, 4));
  CHECK_FALSE(ds.unite(1, 0));
  CHECK(ds.components() == 3);
  CHECK(ds.find(0) == ds.find(1));
  CHECK(ds.find(2) != ds.find(3));
  CHECK(ds.unite(1, 4));
  CHECK(ds.find(0) == ds.find(3));
}

TEST_CASE("Kruskal matches the Pruefer enumeration minimum") {
  std::mt19937_64 g(17);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = 3 + g() % 5;  // 3..7
    const std::size_t dim = 1 + g() % 3;
    const auto pts = oracle::random_cloud(m, dim, g());
    const double expect = oracle::brute_force_mst_length(pts);
    const Tree t = build_mst_kruskal(to_points(pts));
    CHECK(tree_total_length(t) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("Pruefer oracle sanity: unit square") {
  // MST of a unit square uses three sides.
  const oracle::Coords sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(oracle::brute_force_mst_length(sq) == doctest::Approx(3.0));
}

TEST_CASE("Kruskal and Prim agree, including exact ties") {
  SUBCASE("random clouds") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto pts = oracle::random_cloud(300, 1 + seed % 4, seed);
      const auto ps = std::make_shared<const PointSet>(to_points(pts));
      CHECK(build_mst_kruskal(ps).edges() == build_mst_prim(ps).edges());
    }
  }
  SUBCASE("integer lattice with many equal distances") {
    PointSet ps(2);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 9; ++j) ps.add(std::vector<double>{double(i), double(j)});
    auto shared = std::make_shared<const PointSet>(std::move(ps));
    const Tree k = build_mst_kruskal(shared);
    CHECK(k.edges() == build_mst_prim(shared).edges());
    CHECK(tree_total_length(k) == doctest::Approx(107.0));  // 108 vertices, unit edges
  }
  SUBCASE("duplicate points give zero-length edges") {
    PointSet ps(2);
    for (int i = 0; i < 4; ++i) ps.add(std::vector<double>{1.0, 1.0});
    ps.add(std::vector<double>{2.0, 1.0});
    auto shared = std::make_shared<const PointSet>(std::move(ps));
    const Tree k = build_mst_kruskal(shared);
    CHECK(k.edges() == build_mst_prim(shared).edges());
    CHECK(tree_total_length(k) == doctest::Approx(1.0));
    CHECK(std::count_if(k.edges().begin(), k.edges().end(), [](const Edge& e) { return e.length == 0.0; }) == 3);
  }
}

TEST_CASE("sorted 1D samples give the consecutive chain") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 12.0);
  std::vector<double> xs(500);
  for (auto& x : xs) x = u(g);
  std::sort(xs.begin(), xs.end());
  PointSet ps(1);
  for (double x : xs) ps.add(std::vector<double>{x});
  const Tree t = build_mst_kruskal(std::move(ps));
  std::set<std::pair<std::size_t, std::size_t>> chain;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) chain.emplace(i, i + 1);
  CHECK(edge_set(t) == chain);
  CHECK(tree_total_length(t) == doctest::Approx(xs.back() - xs.front()).epsilon(1e-12));
}

TEST_CASE("tree shape and canonical order") {
  const auto pts = oracle::random_cloud(200, 3, 99);
  const Tree t = build_mst_kruskal(to_points(pts));
  CHECK(t.edge_count() == 199);
  CHECK(is_spanning_tree(200, t.edges()));
  for (std::size_t i = 0; i + 1 < t.edge_count(); ++i) {
    const auto& a = t.edges()[i];
    const auto& b = t.edges()[i + 1];
    CHECK(std::tie(a.length, a.u, a.v) < std::tie(b.length, b.u, b.v));
  }
  std::size_t degree_sum = 0;
  for (std::size_t i = 0; i < 200; ++i) degree_sum += t.degree(i);
  CHECK(degree_sum == 2 * 199);
  for (const auto& e : t.edges()) CHECK(e.u < e.v);
}

TEST_CASE("edge weight is the product of vertex weights") {
  PointSet ps(1);
  ps.add(std::vector<double>{0.0}, 2.0);
  ps.add(std::vector<double>{1.0}, 3.0);
  ps.add(std::vector<double>{3.0}, 0.0);
  const Tree t = build_mst_kruskal(std::move(ps));
  REQUIRE(t.edge_count() == 2);
  CHECK(t.edges()[0].weight == 6.0);
  CHECK(t.edges()[1].weight == 0.0);
}

TEST_CASE("region weights leave the edge set unchanged") {
  const auto pts = oracle::random_cloud(400, 2, 5, 150.0);
  const PointSet ps = to_points(pts);
  RegionWeight rw;
  rw.box = {{0, 50.0, 90.0}, {1, 0.0, 100.0}};
  const PointSet weighted = apply_region_weights(ps, rw);
  const Tree a = build_mst_kruskal(ps);
  const Tree b = build_mst_kruskal(weighted);
  REQUIRE(a.edge_count() == b.edge_count());
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    CHECK(a.edges()[i].u == b.edges()[i].u);
    CHECK(a.edges()[i].v == b.edges()[i].v);
    CHECK(a.edges()[i].length == b.edges()[i].length);
  }
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(build_mst_kruskal(PointSet(2)), Error);
  CHECK_THROWS_AS(build_mst_prim(PointSet(2)), Error);
  PointSet one(2);
  one.add(std::vector<double>{1.0, 1.0});
  const Tree t = build_mst_kruskal(std::move(one));
  CHECK(t.edge_count() == 0);
  CHECK(tree_total_length(t) == 0.0);
}

TEST_CASE("spanning tree check rejects cycles and bad indices") {
  CHECK(is_spanning_tree(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}));
  CHECK_FALSE(is_spanning_tree(3, {{0, 1, 1, 1}, {0, 1, 1, 1}}));
  CHECK_FALSE(is_spanning_tree(3, {{0, 1, 1, 1}}));
  CHECK_FALSE(is_spanning_tree(3, {{0, 1, 1, 1}, {1, 5, 1, 1}}));
  CHECK_FALSE(is_spanning_tree(3, {{0, 0, 0, 1}, {1, 2, 1, 1}}));
}

TEST_CASE("1D shortcut matches Prim, including repeated coordinates") {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet ps(1);
    const int range = trial % 2 ? 30 : 1000000;  // odd trials are full of duplicates
    for (int i = 0; i < 400; ++i) ps.add(std::vector<double>{static_cast<double>(g() % range) * 0.125 - 1.0});
    const auto shared = std::make_shared<const PointSet>(std::move(ps));
    CHECK(build_mst_kruskal(shared).edges() == build_mst_prim(shared).edges());
  }
  PointSet same(1);
  for (int i = 0; i < 5; ++i) same.add(std::vector<double>{2.0});
  const Tree star = build_mst_kruskal(std::move(same));
  for (const auto& e : star.edges()) CHECK(e.u == 0);
}
