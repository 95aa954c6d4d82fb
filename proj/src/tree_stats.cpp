#include "mstkit/tree_stats.hpp"

#include <cmath>
#include <limits>

#include "mstkit/error.hpp"

namespace mstkit {

std::vector<WeightedValue> edge_lengths(const Tree& t) {
  if (t.edge_count() == 0) fail(ErrorCode::Numeric, "edge statistics are undefined for a tree without edges");
  std::vector<WeightedValue> out;
  out.reserve(t.edge_count());
  for (const auto& e : t.edges()) out.push_back({e.length, e.weight});
  return out;
}

double mean_edge_length(const Tree& t) {
  if (t.edge_count() == 0) fail(ErrorCode::Numeric, "mean edge length is undefined for a tree without edges");
  double sum = 0.0, wsum = 0.0;
  for (const auto& e : t.edges()) {
    sum += e.weight * e.length;
    wsum += e.weight;
  }
  if (!(wsum > 0.0)) fail(ErrorCode::Numeric, "all edge weights are zero; mean edge length undefined");
  const double mean = sum / wsum;
  if (!(mean > 0.0)) fail(ErrorCode::Numeric, "mean edge length is zero (coincident points)");
  return mean;
}

std::vector<WeightedValue> normalized_lengths(const Tree& t) {
  const double mean = mean_edge_length(t);
  std::vector<WeightedValue> out;
  out.reserve(t.edge_count());
  for (const auto& e : t.edges()) out.push_back({e.length / mean, e.weight});
  return out;
}

std::vector<WeightedValue> log_normalized_lengths(const Tree& t) {
  auto out = normalized_lengths(t);
  for (auto& v : out) v.value = v.value > 0.0 ? std::log(v.value) : -std::numeric_limits<double>::infinity();
  return out;
}

double mean_log_normalized_length(const Tree& t, std::size_t* skipped) {
  const double mean = mean_edge_length(t);
  double sum = 0.0, wsum = 0.0;
  std::size_t zero = 0;
  for (const auto& e : t.edges()) {
    if (e.length <= 0.0) {
      ++zero;
      continue;
    }
    if (e.weight <= 0.0) continue;
    sum += e.weight * std::log(e.length / mean);
    wsum += e.weight;
  }
  if (skipped) *skipped = zero;
  if (!(wsum > 0.0)) fail(ErrorCode::Numeric, "no weighted edge with positive length");
  return sum / wsum;
}

std::vector<WeightedValue> degrees(const Tree& t) {
  std::vector<WeightedValue> out;
  out.reserve(t.vertex_count());
  for (std::size_t i = 0; i < t.vertex_count(); ++i)
    out.push_back({static_cast<double>(t.degree(i)), t.source().weight(i)});
  return out;
}

BranchSet extract_branches(const Tree& t) {
  BranchSet out;
  const std::size_t m = t.vertex_count();
  const auto& edges = t.edges();
  std::vector<char> far_leaf(m, 0);

  for (std::size_t start = 0; start < m; ++start) {
    if (t.degree(start) != 1 || far_leaf[start]) continue;

    Branch b;
    b.vertex_path.push_back(start);
    b.weight = 1.0;
    std::size_t cur = start;
    std::size_t prev_edge = edges.size();
    for (;;) {
      std::size_t e = prev_edge;
      for (std::size_t cand : t.incident(cur))
        if (cand != prev_edge) {
          e = cand;
          break;
        }
      const Edge& edge = edges[e];
      const std::size_t next = edge.u == cur ? edge.v : edge.u;
      b.edge_indices.push_back(e);
      b.vertex_path.push_back(next);
      b.length += edge.length;
      b.weight *= edge.weight;

      const std::size_t d = t.degree(next);
      if (d == 2) {
        prev_edge = e;
        cur = next;
        continue;
      }
      // Reaching another leaf means the whole tree is one path; don't walk
      // it again from the other end.
      if (d == 1) far_leaf[next] = 1;
      break;
    }
    out.branches.push_back(std::move(b));
  }
  return out;
}

std::vector<WeightedValue> branch_lengths(const BranchSet& b) {
  std::vector<WeightedValue> out;
  out.reserve(b.branches.size());
  for (const auto& br : b.branches) out.push_back({br.length, br.weight});
  return out;
}

std::vector<WeightedValue> log_branch_lengths(const BranchSet& b) {
  auto out = branch_lengths(b);
  for (auto& v : out) v.value = v.value > 0.0 ? std::log(v.value) : -std::numeric_limits<double>::infinity();
  return out;
}

TreeStatsSummary summarize(const Tree& t) {
  TreeStatsSummary s;
  s.edge_count = t.edge_count();
  s.total_length = tree_total_length(t);
  s.mean_edge_length = mean_edge_length(t);
  s.mean_log_norm_length = mean_log_normalized_length(t, &s.skipped_zero_length);
  for (std::size_t i = 0; i < t.vertex_count(); ++i) s.degree_counts[t.degree(i)] += t.source().weight(i);
  s.branch_count = extract_branches(t).branches.size();
  return s;
}

}  // namespace mstkit
