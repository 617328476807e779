#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "complex.hpp"

namespace ambient_cycles {

/// Deck-group elements on the oriented edges of a graph.
///
/// For the edge i -> j the stored element t minimizes d(x_i, t.x_j) over the
/// deck group, so it carries the lift of x_j next to the lift of x_i. The
/// reverse orientation carries the inverse.
template <Surface S>
class TransitionMap {
 public:
  TransitionMap(EpsilonGraph graph, std::vector<Element<S>> forward, std::vector<char> degenerate)
      : graph_(std::move(graph)), forward_(std::move(forward)), degenerate_(std::move(degenerate)) {
    if (forward_.size() != graph_.edges.size() || degenerate_.size() != graph_.edges.size())
      throw InputError("transition assignment does not match the graph's edges");
  }

  const EpsilonGraph& graph() const { return graph_; }

  /// t(i -> j); throws InputError if {i, j} is not an edge.
  Element<S> at(std::size_t i, std::size_t j) const {
    const auto e = graph_.edge_index(i, j);
    if (!e) throw InputError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge");
    return i < j ? forward_[*e] : S::inverse(forward_[*e]);
  }

  /// Element on the i -> j orientation of edge `e` (i < j).
  const Element<S>& forward(std::size_t e) const { return forward_[e]; }
  bool degenerate(std::size_t e) const { return degenerate_[e] != 0; }

  bool edge_degenerate(std::size_t i, std::size_t j) const {
    const auto e = graph_.edge_index(i, j);
    return e && degenerate_[*e];
  }

  std::size_t degenerate_count() const {
    return static_cast<std::size_t>(std::count(degenerate_.begin(), degenerate_.end(), 1));
  }

  /// Replace the element on edge i -> j (the reverse orientation follows).
  void set(std::size_t i, std::size_t j, const Element<S>& g) {
    const auto e = graph_.edge_index(i, j);
    if (!e) throw InputError("not an edge");
    forward_[*e] = i < j ? g : S::inverse(g);
  }

 private:
  EpsilonGraph graph_;
  std::vector<Element<S>> forward_;
  std::vector<char> degenerate_;
};

/// Minimizing deck element per edge, read off precomputed pairwise data.
/// Tied edges take the canonically smallest minimizer and are flagged.
template <Surface S>
TransitionMap<S> compute_transition(const PairwiseDistances<S>& pairwise,
                                    const EpsilonGraph& graph) {
  std::vector<Element<S>> forward;
  std::vector<char> degenerate;
  forward.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    const auto& bd = pairwise.at(e.i, e.j);
    forward.push_back(bd.best());
    degenerate.push_back(bd.tied() ? 1 : 0);
  }
  return {graph, std::move(forward), std::move(degenerate)};
}

template <Surface S>
TransitionMap<S> compute_transition(const LiftedPointCloud<S>& cloud, const EpsilonGraph& graph,
                                    const GeometryOptions& options = {}) {
  if (cloud.size() != graph.n) throw InputError("graph was not built on this cloud");
  std::vector<Element<S>> forward;
  std::vector<char> degenerate;
  forward.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    const auto bd = base_distance<S>(cloud.points[e.i], cloud.points[e.j], options);
    forward.push_back(bd.best());
    degenerate.push_back(bd.tied() ? 1 : 0);
  }
  return {graph, std::move(forward), std::move(degenerate)};
}

struct CocycleReport {
  std::size_t checked = 0;
  std::vector<std::array<std::size_t, 3>> violations;
};

/// Checks t(ij) t(jk) = t(ik) on every flag triangle. Never throws.
template <Surface S>
CocycleReport verify_cocycle(const TransitionMap<S>& t) {
  CocycleReport report;
  for (const auto& tri : t.graph().triangles) {
    const auto [i, j, k] = tri;
    ++report.checked;
    if (!S::equal(S::multiply(t.at(i, j), t.at(j, k)), t.at(i, k))) report.violations.push_back(tri);
  }
  return report;
}

/// t'(ij) = theta(i)^-1 t(ij) theta(j).
template <Surface S>
TransitionMap<S> gauge_transform(const TransitionMap<S>& t, const std::vector<Element<S>>& theta) {
  const auto& graph = t.graph();
  if (theta.size() != graph.n) throw InputError("gauge must assign an element to every vertex");
  std::vector<Element<S>> forward;
  std::vector<char> degenerate;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& edge = graph.edges[e];
    forward.push_back(S::multiply(S::multiply(S::inverse(theta[edge.i]), t.forward(e)),
                                  theta[edge.j]));
    degenerate.push_back(t.degenerate(e) ? 1 : 0);
  }
  return {graph, std::move(forward), std::move(degenerate)};
}

/// Ordered product t(v0 v1) t(v1 v2) ... t(vm v0) along a closed walk.
template <Surface S>
Element<S> loop_monodromy(const TransitionMap<S>& t, const EdgeLoop& loop) {
  auto product = S::identity();
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const auto from = loop[k];
    const auto to = loop[(k + 1) % loop.size()];
    if (from == to) throw InputError("loop contains a repeated vertex step");
    product = S::multiply(product, t.at(from, to));
  }
  return product;
}

/// One term of an integer 1-chain: coefficient times the oriented edge from -> to.
struct ChainTerm {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t coefficient = 1;
};

using Chain = std::vector<ChainTerm>;

inline Chain chain_from_loop(const EdgeLoop& loop, std::int64_t coefficient = 1) {
  Chain chain;
  for (std::size_t k = 0; k < loop.size(); ++k)
    chain.push_back({loop[k], loop[(k + 1) % loop.size()], coefficient});
  return chain;
}

/// Sum of coefficient * ab(t(edge)) over a chain with zero boundary.
template <Surface S>
AbelianClass homology_class(const TransitionMap<S>& t, const Chain& chain) {
  std::map<std::size_t, std::int64_t> boundary;
  for (const auto& term : chain) {
    boundary[term.to] += term.coefficient;
    boundary[term.from] -= term.coefficient;
  }
  for (const auto& [vertex, weight] : boundary)
    if (weight != 0) throw InputError("chain is not a cycle: boundary is nonzero at vertex " +
                                      std::to_string(vertex));

  auto total = AbelianClass::zero(S::free_rank, S::torsion_rank);
  for (const auto& term : chain) total += term.coefficient * S::abelianize(t.at(term.from, term.to));
  return total;
}

template <Surface S>
AbelianClass homology_class(const TransitionMap<S>& t, const EdgeLoop& loop) {
  return homology_class(t, chain_from_loop(loop));
}

struct CycleClass {
  EdgeLoop cycle;
  AbelianClass homology;
  bool unreliable = false;  // passes through an edge with tied minimizers
};

template <Surface S>
struct CloudClassification {
  EpsilonGraph graph;
  TransitionMap<S> transition;
  CycleBasis basis;
  std::vector<CycleClass> classes;
  CocycleReport cocycle;
  std::size_t degenerate_edges = 0;
  std::size_t unreliable_cycles = 0;
};

/// Graph, transition map, cycle basis and one homology class per basis cycle.
template <Surface S>
CloudClassification<S> classify_cloud(const LiftedPointCloud<S>& cloud, double epsilon,
                                      const GeometryOptions& options = {}) {
  const auto pairwise = PairwiseDistances<S>::compute(cloud, options);
  auto graph = build_epsilon_graph(pairwise, epsilon);
  auto transition = compute_transition(pairwise, graph);
  auto basis = cycle_basis(graph);
  std::vector<CycleClass> classes;
  std::size_t unreliable = 0;
  for (const auto& cycle : basis.fundamental_cycles) {
    bool flagged = false;
    for (std::size_t k = 0; k < cycle.size(); ++k)
      flagged = flagged || transition.edge_degenerate(cycle[k], cycle[(k + 1) % cycle.size()]);
    unreliable += flagged ? 1 : 0;
    classes.push_back({cycle, homology_class(transition, cycle), flagged});
  }
  auto cocycle = verify_cocycle(transition);
  const auto degenerate = transition.degenerate_count();
  return {std::move(graph), std::move(transition), std::move(basis), std::move(classes),
          std::move(cocycle),  degenerate,            unreliable};
}

}  // namespace ambient_cycles
