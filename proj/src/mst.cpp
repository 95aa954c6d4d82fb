#include "mstkit/mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "mstkit/disjoint_set.hpp"
#include "mstkit/error.hpp"

namespace mstkit {
namespace {

struct Candidate {
  double d2;
  std::uint32_t u;
  std::uint32_t v;
};

inline bool key_less(const Candidate& a, const Candidate& b) {
  return std::tie(a.d2, a.u, a.v) < std::tie(b.d2, b.u, b.v);
}

bool canonical_less(const Edge& a, const Edge& b) {
  return std::tie(a.length, a.u, a.v) < std::tie(b.length, b.u, b.v);
}

Edge make_edge(const PointSet& ps, std::size_t a, std::size_t b, double d2) {
  if (a > b) std::swap(a, b);
  return Edge{a, b, std::sqrt(d2), ps.weight(a) * ps.weight(b)};
}

void check_buildable(const std::shared_ptr<const PointSet>& ps) {
  if (!ps) fail(ErrorCode::InvalidArgument, "null point set");
  if (ps->empty()) fail(ErrorCode::InvalidArgument, "cannot build a tree over an empty point set");
  if (ps->size() > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorCode::InvalidArgument, "point set too large");
}

// In one dimension every tree edge joins neighbours in sorted order. Points
// sharing a coordinate form a group; under the (d2, u, v) order a group is a
// star on its lowest index, and neighbouring groups are joined through their
// lowest indices.
std::vector<Edge> kruskal_1d(const PointSet& ps) {
  const std::size_t m = ps.size();
  const double* x = ps.raw_coords().data();
  std::vector<std::uint32_t> order(m);
  for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [x](auto a, auto b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });

  std::vector<Edge> out;
  out.reserve(m - 1);
  std::size_t prev_root = m;
  for (std::size_t g = 0; g < m;) {
    std::size_t end = g + 1;
    while (end < m && x[order[end]] == x[order[g]]) ++end;
    const std::uint32_t root = order[g];  // lowest index of the group
    for (std::size_t k = g + 1; k < end; ++k) out.push_back(make_edge(ps, root, order[k], 0.0));
    if (prev_root != m) {
      const double d = x[prev_root] - x[root];
      out.push_back(make_edge(ps, prev_root, root, d * d));
    }
    prev_root = root;
    g = end;
  }
  return out;
}

}  // namespace

Tree::Tree(std::shared_ptr<const PointSet> source, std::vector<Edge> edges)
    : source_(std::move(source)), edges_(std::move(edges)) {
  if (!source_) fail(ErrorCode::InvalidArgument, "tree without a source point set");
  if (!is_spanning_tree(source_->size(), edges_))
    fail(ErrorCode::Internal, "edge list is not a spanning tree of its point set");
  std::sort(edges_.begin(), edges_.end(), canonical_less);
  adjacency_.resize(source_->size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back(e);
    adjacency_[edges_[e].v].push_back(e);
  }
}

bool is_spanning_tree(std::size_t vertex_count, const std::vector<Edge>& edges) {
  if (vertex_count == 0 || edges.size() + 1 != vertex_count) return false;
  DisjointSet ds(vertex_count);
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) return false;
    if (!ds.unite(e.u, e.v)) return false;
  }
  return ds.components() == 1;
}

Tree build_mst_kruskal(std::shared_ptr<const PointSet> ps) {
  check_buildable(ps);
  const std::size_t m = ps->size();
  const std::size_t dim = ps->dimension();
  if (dim == 1) {
    auto edges = kruskal_1d(*ps);
    return Tree(std::move(ps), std::move(edges));
  }
  const double* x = ps->raw_coords().data();

  std::vector<Edge> out;
  out.reserve(m - 1);
  DisjointSet ds(m);
  std::vector<std::uint32_t> component(m);

  const std::size_t batch = std::max<std::size_t>(4 * m, 1024);
  std::vector<Candidate> buffer;
  buffer.reserve(2 * batch);

  bool have_floor = false;
  Candidate floor{};

  while (out.size() + 1 < m) {
    for (std::size_t i = 0; i < m; ++i) component[i] = static_cast<std::uint32_t>(ds.find(i));
    buffer.clear();
    bool truncated = false;
    Candidate ceiling{};

    for (std::uint32_t i = 0; i < m; ++i) {
      const double* xi = x + std::size_t{i} * dim;
      const std::uint32_t ci = component[i];
      for (std::uint32_t j = i + 1; j < m; ++j) {
        if (component[j] == ci) continue;
        const double* xj = x + std::size_t{j} * dim;
        double d2 = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
          const double d = xi[a] - xj[a];
          d2 += d * d;
        }
        const Candidate c{d2, i, j};
        if (have_floor && !key_less(floor, c)) continue;
        if (truncated && key_less(ceiling, c)) continue;
        buffer.push_back(c);
        if (buffer.size() == 2 * batch) {
          std::nth_element(buffer.begin(), buffer.begin() + (batch - 1), buffer.end(), key_less);
          buffer.resize(batch);
          ceiling = buffer[batch - 1];
          truncated = true;
        }
      }
    }

    if (buffer.empty()) fail(ErrorCode::Internal, "candidate scan found no crossing edge");
    std::sort(buffer.begin(), buffer.end(), key_less);
    for (const auto& c : buffer) {
      if (ds.unite(c.u, c.v)) {
        out.push_back(make_edge(*ps, c.u, c.v, c.d2));
        if (out.size() + 1 == m) break;
      }
    }
    floor = buffer.back();
    have_floor = true;
  }

  return Tree(std::move(ps), std::move(out));
}

Tree build_mst_prim(std::shared_ptr<const PointSet> ps) {
  check_buildable(ps);
  const std::size_t m = ps->size();

  // best[v]: cheapest known connection of v to the growing tree, ordered by
  // the same (d2, lo, hi) key Kruskal uses.
  struct Link {
    double d2 = std::numeric_limits<double>::infinity();
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t from = 0;
  };
  auto link_less = [](const Link& a, const Link& b) {
    return std::tie(a.d2, a.lo, a.hi) < std::tie(b.d2, b.lo, b.hi);
  };

  std::vector<Link> best(m);
  std::vector<char> in_tree(m, 0);
  std::vector<Edge> out;
  out.reserve(m - 1);

  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < m; ++step) {
    const auto xc = ps->coords(current);
    std::size_t next = m;
    for (std::size_t v = 0; v < m; ++v) {
      if (in_tree[v]) continue;
      Link cand{squared_distance(xc, ps->coords(v)), std::min(current, v), std::max(current, v), current};
      if (link_less(cand, best[v])) best[v] = cand;
      if (next == m || link_less(best[v], best[next])) next = v;
    }
    in_tree[next] = 1;
    out.push_back(make_edge(*ps, best[next].from, next, best[next].d2));
    current = next;
  }

  return Tree(std::move(ps), std::move(out));
}

Tree build_mst_kruskal(PointSet ps) { return build_mst_kruskal(std::make_shared<const PointSet>(std::move(ps))); }
Tree build_mst_prim(PointSet ps) { return build_mst_prim(std::make_shared<const PointSet>(std::move(ps))); }

Tree build_mst(std::shared_ptr<const PointSet> ps, MstAlgorithm algorithm) {
  return algorithm == MstAlgorithm::Prim ? build_mst_prim(std::move(ps)) : build_mst_kruskal(std::move(ps));
}

double tree_total_length(const Tree& t) {
  double total = 0.0;
  for (const auto& e : t.edges()) total += e.length;
  return total;
}

}  // namespace mstkit
