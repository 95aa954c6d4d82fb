#include "mstkit/kd_tree.hpp"

#include <algorithm>
#include <numeric>

#include "mstkit/error.hpp"
#include "mstkit/geometry.hpp"

namespace mstkit {

KdTree::KdTree(std::span<const double> coords, std::size_t dimension, std::size_t leaf_size)
    : coords_(coords), dim_(dimension), count_(dimension ? coords.size() / dimension : 0),
      leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  if (dimension == 0 || coords.size() % dimension != 0)
    fail(ErrorCode::InvalidArgument, "k-d tree coordinate buffer does not match dimension");
  order_.resize(count_);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (count_ > 0) build(0, count_);
}

int KdTree::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size_) return id;

  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t a = 0; a < dim_; ++a) {
    double lo = coords_[order_[begin] * dim_ + a], hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double x = coords_[order_[i] * dim_ + a];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = a;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide: keep as a leaf

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::size_t a, std::size_t b) { return coords_[a * dim_ + axis] < coords_[b * dim_ + axis]; });
  const double split = coords_[order_[mid] * dim_ + axis];

  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::d2_to(std::size_t idx, std::span<const double> q) const {
  return squared_distance(coords_.subspan(idx * dim_, dim_), q);
}

void KdTree::search(int node_id, std::span<const double> q, std::size_t k, std::vector<Neighbor>& heap) const {
  const Node& node = nodes_[node_id];
  if (node.left < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const Neighbor cand{d2_to(order_[i], q), order_[i]};
      if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
      } else if (cand < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  // Left holds coordinates <= split, right holds >= split.
  const double diff = q[node.axis] - node.split;
  const int near = diff <= 0.0 ? node.left : node.right;
  const int far = diff <= 0.0 ? node.right : node.left;
  search(near, q, k, heap);
  // Equal plane distance must still be visited: a tie may carry a lower index.
  if (heap.size() < k || diff * diff <= heap.front().d2) search(far, q, k, heap);
}

Neighbor KdTree::nearest(std::span<const double> query) const {
  auto r = nearest_k(query, 1);
  if (r.empty()) fail(ErrorCode::InvalidArgument, "nearest-neighbour query on an empty set");
  return r.front();
}

std::vector<Neighbor> KdTree::nearest_k(std::span<const double> query, std::size_t k) const {
  if (query.size() != dim_) fail(ErrorCode::InvalidArgument, "query dimension mismatch");
  std::vector<Neighbor> heap;
  if (count_ == 0 || k == 0) return heap;
  heap.reserve(k + 1);
  search(0, query, k, heap);
  std::sort_heap(heap.begin(), heap.end());
  return heap;
}

std::vector<Neighbor> brute_force_nearest_k(std::span<const double> coords, std::size_t dimension,
                                            std::span<const double> query, std::size_t k) {
  if (dimension == 0 || coords.size() % dimension != 0 || query.size() != dimension)
    fail(ErrorCode::InvalidArgument, "dimension mismatch in nearest-neighbour query");
  const std::size_t n = coords.size() / dimension;
  std::vector<Neighbor> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = {squared_distance(coords.subspan(i * dimension, dimension), query), i};
  k = std::min(k, n);
  std::partial_sort(all.begin(), all.begin() + k, all.end());
  all.resize(k);
  return all;
}

}  // namespace mstkit
