#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace ambient_cycles {

/// Base points on a surface, each given by one chosen lift in the cover.
template <Surface S>
struct LiftedPointCloud {
  std::vector<Point<S>> points;

  std::size_t size() const { return points.size(); }
};

/// Pairwise quotient distances and minimizers, indexed by vertex pairs i < j.
template <Surface S>
class PairwiseDistances {
 public:
  PairwiseDistances() = default;

  static PairwiseDistances compute(const LiftedPointCloud<S>& cloud,
                                   const GeometryOptions& options = {}) {
    PairwiseDistances out;
    out.n_ = cloud.size();
    out.entries_.reserve(out.n_ * (out.n_ > 0 ? out.n_ - 1 : 0) / 2);
    for (std::size_t i = 0; i < out.n_; ++i)
      for (std::size_t j = i + 1; j < out.n_; ++j) {
        auto bd = base_distance<S>(cloud.points[i], cloud.points[j], options);
        if (bd.length <= kDuplicateThreshold)
          throw InputError("duplicate base points " + std::to_string(i) + " and " +
                           std::to_string(j));
        out.entries_.push_back(std::move(bd));
      }
    return out;
  }

  std::size_t size() const { return n_; }

  const BaseDistance<S>& at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return entries_[i * (2 * n_ - i - 1) / 2 + (j - i - 1)];
  }

  double distance(std::size_t i, std::size_t j) const { return i == j ? 0.0 : at(i, j).length; }

  static constexpr double kDuplicateThreshold = 1e-12;

 private:
  std::size_t n_ = 0;
  std::vector<BaseDistance<S>> entries_;
};

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;
  bool degenerate = false;  // tied minimizers
};

/// Closed epsilon-neighbourhood graph with its flag triangles.
struct EpsilonGraph {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::vector<Edge> edges;  // sorted by (i, j), i < j
  std::vector<std::array<std::size_t, 3>> triangles;

  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{i, j},
                               [](const Edge& e, const std::pair<std::size_t, std::size_t>& key) {
                                 return std::pair{e.i, e.j} < key;
                               });
    if (it == edges.end() || it->i != i || it->j != j) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }

  bool has_edge(std::size_t i, std::size_t j) const { return edge_index(i, j).has_value(); }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
      adj[e.i].push_back(e.j);
      adj[e.j].push_back(e.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }
};

/// Graph from precomputed pairwise data; (i, j) is an edge iff d <= epsilon.
template <Surface S>
EpsilonGraph build_epsilon_graph(const PairwiseDistances<S>& pairwise, double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  EpsilonGraph graph;
  graph.n = pairwise.size();
  graph.epsilon = epsilon;
  std::vector<std::vector<char>> adjacent(graph.n, std::vector<char>(graph.n, 0));
  for (std::size_t i = 0; i < graph.n; ++i)
    for (std::size_t j = i + 1; j < graph.n; ++j) {
      const auto& bd = pairwise.at(i, j);
      if (bd.length <= epsilon) {
        graph.edges.push_back({i, j, bd.length, bd.tied()});
        adjacent[i][j] = adjacent[j][i] = 1;
      }
    }
  for (std::size_t i = 0; i < graph.n; ++i)
    for (std::size_t j = i + 1; j < graph.n; ++j) {
      if (!adjacent[i][j]) continue;
      for (std::size_t k = j + 1; k < graph.n; ++k)
        if (adjacent[i][k] && adjacent[j][k]) graph.triangles.push_back({i, j, k});
    }
  return graph;
}

template <Surface S>
EpsilonGraph build_epsilon_graph(const LiftedPointCloud<S>& cloud, double epsilon,
                                 const GeometryOptions& options = {}) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  return build_epsilon_graph(PairwiseDistances<S>::compute(cloud, options), epsilon);
}

/// Closed walk v0 v1 ... vm (v0 again implied at the end).
using EdgeLoop = std::vector<std::size_t>;

struct CycleBasis {
  std::vector<std::optional<std::size_t>> parent;  // BFS forest; roots have none
  std::vector<EdgeLoop> fundamental_cycles;
};

/// Fundamental cycles of a BFS spanning forest. Each cycle starts with its
/// non-tree edge i -> j (i < j) and returns to i through the tree.
inline CycleBasis cycle_basis(const EpsilonGraph& graph) {
  CycleBasis basis;
  basis.parent.assign(graph.n, std::nullopt);
  std::vector<std::size_t> depth(graph.n, 0);
  std::vector<char> seen(graph.n, 0);
  std::vector<char> tree_edge(graph.edges.size(), 0);
  const auto adj = graph.adjacency();

  for (std::size_t root = 0; root < graph.n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      for (auto w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        basis.parent[w] = v;
        depth[w] = depth[v] + 1;
        tree_edge[*graph.edge_index(v, w)] = 1;
        frontier.push(w);
      }
    }
  }

  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    const auto i = graph.edges[e].i;
    const auto j = graph.edges[e].j;
    // climb both endpoints to their lowest common ancestor
    std::vector<std::size_t> from_j{j};
    std::vector<std::size_t> from_i{i};
    auto a = i;
    auto b = j;
    while (depth[a] > depth[b]) from_i.push_back(a = *basis.parent[a]);
    while (depth[b] > depth[a]) from_j.push_back(b = *basis.parent[b]);
    while (a != b) {
      from_i.push_back(a = *basis.parent[a]);
      from_j.push_back(b = *basis.parent[b]);
    }
    // walk j -> lca -> i, then close it up through the non-tree edge
    std::vector<std::size_t> walk = from_j;
    walk.insert(walk.end(), from_i.rbegin() + 1, from_i.rend());
    EdgeLoop loop{i};
    loop.insert(loop.end(), walk.begin(), walk.end() - 1);
    basis.fundamental_cycles.push_back(std::move(loop));
  }
  return basis;
}

}  // namespace ambient_cycles
