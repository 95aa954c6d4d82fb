#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mstkit/histogram.hpp"
#include "mstkit/mst.hpp"

namespace mstkit {

/// Chain of edges that starts at a leaf and runs through degree-2 vertices
/// until it reaches a junction (degree >= 3, edge into it included) or
/// another leaf.
struct Branch {
  std::vector<std::size_t> vertex_path;
  std::vector<std::size_t> edge_indices;
  double length = 0.0;
  double weight = 1.0;  // product of member edge weights
};

struct BranchSet {
  std::vector<Branch> branches;
};

struct TreeStatsSummary {
  double mean_edge_length = 0.0;      // weighted <l>
  std::size_t edge_count = 0;
  double mean_log_norm_length = 0.0;  // mu_l, weighted mean of ln(l / <l>)
  std::size_t skipped_zero_length = 0;
  std::map<std::size_t, double> degree_counts;  // degree -> summed vertex weight
  std::size_t branch_count = 0;
  double total_length = 0.0;
};

/// Edge lengths in tree order, each with its edge weight. Throws Numeric for a
/// tree without edges.
std::vector<WeightedValue> edge_lengths(const Tree& t);

/// Weighted mean edge length. Throws Numeric when there are no edges, the
/// edge weights sum to zero, or the mean is zero.
double mean_edge_length(const Tree& t);

std::vector<WeightedValue> normalized_lengths(const Tree& t);
/// ln of the normalized lengths; zero-length edges give -inf.
std::vector<WeightedValue> log_normalized_lengths(const Tree& t);

/// mu_l: weighted mean of ln(l_bar) over edges with positive length and
/// weight. `skipped` (optional) receives the number of zero-length edges left
/// out.
double mean_log_normalized_length(const Tree& t, std::size_t* skipped = nullptr);

/// Vertex degrees, weighted by vertex weight.
std::vector<WeightedValue> degrees(const Tree& t);

BranchSet extract_branches(const Tree& t);
std::vector<WeightedValue> branch_lengths(const BranchSet& b);
std::vector<WeightedValue> log_branch_lengths(const BranchSet& b);

TreeStatsSummary summarize(const Tree& t);

}  // namespace mstkit
