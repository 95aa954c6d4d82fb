#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mstkit/geometry.hpp"

namespace mstkit {

/// Tree edge between vertices u < v of the source point set. The weight is the
/// product of the two vertex weights.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Minimal spanning tree over a shared, immutable point set. Edges are kept in
/// canonical order: ascending length, then (u, v).
class Tree {
 public:
  Tree(std::shared_ptr<const PointSet> source, std::vector<Edge> edges);

  const PointSet& source() const noexcept { return *source_; }
  const std::shared_ptr<const PointSet>& source_ptr() const noexcept { return source_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return source_->size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Incident edge indices of vertex i.
  const std::vector<std::size_t>& incident(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }

 private:
  std::shared_ptr<const PointSet> source_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

enum class MstAlgorithm { Kruskal, Prim };

/// Kruskal's algorithm over the complete Euclidean graph.
///
/// Candidate pairs are ordered by (squared length, u, v), which is a strict
/// total order, so the result is unique even when distances tie. The pairs
/// are never materialised at once: each round scans all O(m^2) pairs and keeps
/// only the smallest batch of candidates that cross current components and
/// sort after the previous batch. Processing batches in order is equivalent
/// to a single full sort. Time O(rounds * m^2), memory O(m).
///
/// One-dimensional input skips the scan: sorting gives the same tree in
/// O(m log m).
Tree build_mst_kruskal(std::shared_ptr<const PointSet> ps);
Tree build_mst_kruskal(PointSet ps);

/// Dense O(m^2) Prim with the same edge order as Kruskal; used as a
/// cross-check.
Tree build_mst_prim(std::shared_ptr<const PointSet> ps);
Tree build_mst_prim(PointSet ps);

Tree build_mst(std::shared_ptr<const PointSet> ps, MstAlgorithm algorithm = MstAlgorithm::Kruskal);

double tree_total_length(const Tree& t);

/// True when `edges` has m - 1 entries, no self loops or out-of-range
/// vertices, and connects all m vertices without a cycle.
bool is_spanning_tree(std::size_t vertex_count, const std::vector<Edge>& edges);

}  // namespace mstkit
