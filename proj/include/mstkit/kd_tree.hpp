#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mstkit {

/// Neighbour returned by exact searches: squared distance and point index.
/// Ordered lexicographically, so equal distances resolve to the lower index.
struct Neighbor {
  double d2 = 0.0;
  std::size_t index = 0;

  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
  }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact k-d tree over a row-major coordinate buffer. Results are identical to
/// an exhaustive scan, including tie order. The buffer must outlive the tree.
class KdTree {
 public:
  KdTree(std::span<const double> coords, std::size_t dimension, std::size_t leaf_size = 8);

  Neighbor nearest(std::span<const double> query) const;
  /// The k nearest points in ascending order (fewer if the set is smaller).
  std::vector<Neighbor> nearest_k(std::span<const double> query, std::size_t k) const;

  std::size_t size() const noexcept { return count_; }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t axis = 0;
    double split = 0.0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end);
  void search(int node, std::span<const double> q, std::size_t k, std::vector<Neighbor>& heap) const;
  double d2_to(std::size_t idx, std::span<const double> q) const;

  std::span<const double> coords_;
  std::size_t dim_;
  std::size_t count_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

/// Exhaustive reference implementation of the same queries.
std::vector<Neighbor> brute_force_nearest_k(std::span<const double> coords, std::size_t dimension,
                                            std::span<const double> query, std::size_t k);

}  // namespace mstkit
