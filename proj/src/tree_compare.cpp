#include "mstkit/tree_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "mstkit/error.hpp"
#include "mstkit/kd_tree.hpp"

namespace mstkit {
namespace {

// Nearest / k-nearest queries over one coordinate buffer, exhaustive or via
// a k-d tree depending on the method and set size.
class NeighborIndex {
 public:
  NeighborIndex(std::span<const double> coords, std::size_t dim, SearchMethod method)
      : coords_(coords), dim_(dim) {
    const std::size_t n = coords.size() / dim;
    const bool use_tree =
        method == SearchMethod::KdTree || (method == SearchMethod::Auto && n > kExhaustiveLimit);
    if (use_tree) tree_ = std::make_unique<KdTree>(coords, dim);
  }

  std::vector<Neighbor> nearest_k(std::span<const double> q, std::size_t k) const {
    if (tree_) return tree_->nearest_k(q, k);
    return brute_force_nearest_k(coords_, dim_, q, k);
  }

  Neighbor nearest(std::span<const double> q) const {
    if (tree_) return tree_->nearest(q);
    Neighbor best{std::numeric_limits<double>::infinity(), 0};
    const std::size_t n = coords_.size() / dim_;
    for (std::size_t i = 0; i < n; ++i) {
      const Neighbor cand{squared_distance(coords_.subspan(i * dim_, dim_), q), i};
      if (cand < best) best = cand;
    }
    return best;
  }

 private:
  std::span<const double> coords_;
  std::size_t dim_;
  std::unique_ptr<KdTree> tree_;
};

void check_pair(const Tree& subject, const Tree& reference) {
  if (subject.source().dimension() != reference.source().dimension())
    fail(ErrorCode::InvalidArgument, "dimension mismatch between compared trees: " +
                                         std::to_string(subject.source().dimension()) + " vs " +
                                         std::to_string(reference.source().dimension()));
}

}  // namespace

ComparisonResult connection_lengths(const Tree& subject, const Tree& reference, SearchMethod method) {
  check_pair(subject, reference);
  const PointSet& s = subject.source();
  const PointSet& r = reference.source();
  NeighborIndex index(r.raw_coords(), r.dimension(), method);

  ComparisonResult out;
  out.records.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Neighbor nb = index.nearest(s.coords(i));
    out.records.push_back({i, nb.index, std::sqrt(nb.d2), 0.0, s.weight(i)});
  }
  return out;
}

ComparisonResult connection_ratios(const Tree& subject, const Tree& reference, std::size_t k, EdgePool pool,
                                   SearchMethod method) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "connection ratio needs k >= 1");
  ComparisonResult out = connection_lengths(subject, reference, method);

  const Tree& pool_tree = pool == EdgePool::Reference ? reference : subject;
  const auto& edges = pool_tree.edges();
  if (edges.empty()) fail(ErrorCode::InvalidArgument, "connection ratio edge pool has no edges");

  const PointSet& ps = pool_tree.source();
  const std::size_t dim = ps.dimension();
  std::vector<double> midpoints(edges.size() * dim);
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (std::size_t a = 0; a < dim; ++a)
      midpoints[e * dim + a] = 0.5 * (ps.coord(edges[e].u, a) + ps.coord(edges[e].v, a));

  NeighborIndex index(midpoints, dim, method);
  const PointSet& s = subject.source();
  for (auto& rec : out.records) {
    const auto near = index.nearest_k(s.coords(rec.vertex), k);
    double sum = 0.0;
    for (const auto& nb : near) sum += edges[nb.index].length;
    const double local = sum / static_cast<double>(near.size());
    if (rec.c == 0.0) {
      rec.r = 0.0;
    } else if (local > 0.0) {
      rec.r = rec.c / local;
    } else {
      rec.r = std::numeric_limits<double>::infinity();
      ++out.infinite_ratios;
    }
  }
  out.k = k;
  out.pool = pool;
  out.has_ratios = true;
  return out;
}

std::vector<WeightedValue> connection_length_values(const ComparisonResult& r) {
  std::vector<WeightedValue> out;
  out.reserve(r.records.size());
  for (const auto& rec : r.records) out.push_back({rec.c, rec.weight});
  return out;
}

std::vector<WeightedValue> connection_ratio_values(const ComparisonResult& r) {
  if (!r.has_ratios) fail(ErrorCode::InvalidArgument, "comparison was computed without ratios");
  std::vector<WeightedValue> out;
  out.reserve(r.records.size());
  for (const auto& rec : r.records) out.push_back({rec.r, rec.weight});
  return out;
}

const char* to_string(EdgePool pool) { return pool == EdgePool::Reference ? "reference" : "subject"; }

std::optional<EdgePool> parse_edge_pool(const std::string& s) {
  if (s == "reference") return EdgePool::Reference;
  if (s == "subject") return EdgePool::Subject;
  return std::nullopt;
}

}  // namespace mstkit
