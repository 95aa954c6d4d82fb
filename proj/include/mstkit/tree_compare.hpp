#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mstkit/histogram.hpp"
#include "mstkit/mst.hpp"

namespace mstkit {

/// Which tree's edges set the local length scale in the connection ratio.
enum class EdgePool { Reference, Subject };

enum class SearchMethod {
  Auto,        // exhaustive up to kExhaustiveLimit points, k-d tree above
  Exhaustive,
  KdTree,
};

inline constexpr std::size_t kExhaustiveLimit = 10000;

struct ConnectionRecord {
  std::size_t vertex = 0;   // index in the subject tree
  std::size_t nearest = 0;  // nearest reference vertex
  double c = 0.0;
  double r = 0.0;           // 0 when ratios were not requested
  double weight = 1.0;      // subject vertex weight
};

/// Per-vertex comparison of a subject tree against a reference tree. The
/// relation is directional: swapping subject and reference gives a different
/// distribution.
struct ComparisonResult {
  std::vector<ConnectionRecord> records;
  std::size_t k = 0;
  EdgePool pool = EdgePool::Reference;
  bool has_ratios = false;
  std::size_t infinite_ratios = 0;  // vertices whose local mean edge length was zero
};

/// c: distance from each subject vertex to the nearest reference vertex.
ComparisonResult connection_lengths(const Tree& subject, const Tree& reference,
                                    SearchMethod method = SearchMethod::Auto);

/// r = c / (mean length of the k pool edges whose midpoints are nearest to
/// the vertex). Uses every pool edge when the pool has fewer than k.
ComparisonResult connection_ratios(const Tree& subject, const Tree& reference, std::size_t k = 5,
                                   EdgePool pool = EdgePool::Reference,
                                   SearchMethod method = SearchMethod::Auto);

std::vector<WeightedValue> connection_length_values(const ComparisonResult& r);
std::vector<WeightedValue> connection_ratio_values(const ComparisonResult& r);

const char* to_string(EdgePool pool);
std::optional<EdgePool> parse_edge_pool(const std::string& s);

}  // namespace mstkit
