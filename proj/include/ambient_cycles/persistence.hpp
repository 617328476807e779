#pragma once

// Vietoris-Rips persistence of four-point configurations and the empirical
// principal persistence measure, split by the ambient homology class of the
// persistent cycle.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "transition.hpp"

namespace ambient_cycles {

using DistanceMatrix4 = std::array<std::array<double, 4>, 4>;

struct QuadrupleResult {
  bool trivial = true;
  // A boundary tie in the four-point criterion, or a persistent cycle with
  // an edge whose minimizing deck element is not unique.
  bool degenerate = false;
  double birth = 0.0;
  double death = 0.0;
  // x0, x1: the longer diagonal; x2, x3: the shorter one (length = death).
  std::array<std::size_t, 4> labelling{0, 1, 2, 3};
  // The persistent 4-cycle, starting at the smallest vertex and stepping to
  // its smaller neighbour.
  std::array<std::size_t, 4> cycle_order{0, 1, 2, 3};
  std::optional<AbelianClass> homology;
  std::size_t index = 0;
};

namespace detail {

inline constexpr std::array<std::array<std::size_t, 4>, 3> kMatchings = {{
    {0, 1, 2, 3},
    {0, 2, 1, 3},
    {0, 3, 1, 2},
}};

inline void validate_matrix(const DistanceMatrix4& d) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (d[i][i] != 0.0) throw InputError("distance matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!std::isfinite(d[i][j]) || !(d[i][j] > 0.0))
        throw InputError("off-diagonal distances must be positive and finite");
      if (std::abs(d[i][j] - d[j][i]) > 1e-12) throw InputError("distance matrix is not symmetric");
    }
  }
}

inline std::array<std::size_t, 4> cycle_from_labelling(const std::array<std::size_t, 4>& x) {
  // cross pairs x0-x2, x2-x1, x1-x3, x3-x0 form the cycle
  std::array<std::size_t, 4> ring{x[0], x[2], x[1], x[3]};
  std::size_t start = 0;
  for (std::size_t k = 1; k < 4; ++k)
    if (ring[k] < ring[start]) start = k;
  const auto next = ring[(start + 1) % 4];
  const auto prev = ring[(start + 3) % 4];
  std::array<std::size_t, 4> out{};
  for (std::size_t k = 0; k < 4; ++k)
    out[k] = next < prev ? ring[(start + k) % 4] : ring[(start + 4 - k) % 4];
  return out;
}

}  // namespace detail

/// Persistent 1-cycle of the Rips filtration on four points, if any.
///
/// A cycle with bars [b, d) exists iff some labelling has
/// d(x0,x1) >= d(x2,x3) = d > b = max over the four cross pairs. Within
/// `tie_tolerance` of b = d the result is trivial and flagged degenerate.
inline QuadrupleResult four_point_persistence(const DistanceMatrix4& d,
                                              double tie_tolerance = 1e-9) {
  detail::validate_matrix(d);
  QuadrupleResult result;
  for (const auto& m : detail::kMatchings) {
    std::array<std::size_t, 4> x = m;
    if (d[x[0]][x[1]] < d[x[2]][x[3]]) x = {m[2], m[3], m[0], m[1]};
    const double death = d[x[2]][x[3]];
    const double birth = std::max({d[x[0]][x[2]], d[x[0]][x[3]], d[x[1]][x[2]], d[x[1]][x[3]]});
    if (std::abs(death - birth) <= tie_tolerance) {
      result.degenerate = true;
      continue;
    }
    if (death > birth) {
      result.trivial = false;
      result.birth = birth;
      result.death = death;
      result.labelling = x;
      result.cycle_order = detail::cycle_from_labelling(x);
      return result;
    }
  }
  return result;
}

inline DistanceMatrix4 distance_matrix(const auto& pairwise) {
  DistanceMatrix4 d{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d[i][j] = pairwise.distance(i, j);
  return d;
}

/// The epsilon-neighbourhood graph of a persistent quadruple for epsilon in
/// [birth, death): the 4-cycle on the cross pairs.
inline EpsilonGraph minimal_cycle_graph(const DistanceMatrix4& d, const QuadrupleResult& result,
                                        double epsilon) {
  if (result.trivial) throw InputError("quadruple has no persistent cycle");
  if (!(epsilon >= result.birth && epsilon < result.death))
    throw InputError("epsilon must lie in [birth, death)");
  EpsilonGraph graph;
  graph.n = 4;
  graph.epsilon = epsilon;
  std::array<int, 4> degree{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (d[i][j] <= epsilon) {
        graph.edges.push_back({i, j, d[i][j], false});
        ++degree[i];
        ++degree[j];
      }
  for (auto deg : degree)
    if (deg != 2) throw std::logic_error("thresholded quadruple is not a cycle graph");
  return graph;
}

/// Persistence of four lifted points and, when a cycle persists, the
/// homology class of its minimal cycle with the sign canonicalized.
template <Surface S>
QuadrupleResult classify_quadruple(const LiftedPointCloud<S>& cloud,
                                   const GeometryOptions& options = {}) {
  if (cloud.size() != 4) throw InputError("classify_quadruple needs exactly four points");
  const auto pairwise = PairwiseDistances<S>::compute(cloud, options);
  const auto d = distance_matrix(pairwise);
  auto result = four_point_persistence(d, options.tie_tolerance);
  if (result.trivial) return result;

  const double epsilon = 0.5 * (result.birth + result.death);
  const auto graph = build_epsilon_graph(pairwise, epsilon);
  const auto expected = minimal_cycle_graph(d, result, epsilon);
  if (graph.edges.size() != expected.edges.size())
    throw std::logic_error("epsilon graph disagrees with the minimal cycle");

  const auto transition = compute_transition(pairwise, graph);
  const EdgeLoop loop(result.cycle_order.begin(), result.cycle_order.end());
  for (std::size_t k = 0; k < 4; ++k)
    result.degenerate = result.degenerate || transition.edge_degenerate(loop[k], loop[(k + 1) % 4]);
  result.homology = homology_class(transition, loop).canonical_sign();
  return result;
}

struct MeasureSample {
  SurfaceKind surface = SurfaceKind::Torus;
  std::size_t total = 0;
  std::size_t persistent = 0;
  std::size_t degenerate = 0;  // excluded from class_counts
  std::size_t skipped = 0;     // resource errors
  double phi_bar = 0.0;
  std::vector<QuadrupleResult> points;  // persistent quadruples only
  std::map<std::string, std::size_t> class_counts;
};

/// Monte Carlo sample of the principal persistence measure from
/// `n_samples` independent uniform quadruples. All points are drawn from
/// `seed` before classification, so results do not depend on `threads`.
template <Surface S>
MeasureSample principal_persistence_measure(std::size_t n_samples, std::uint64_t seed,
                                            const GeometryOptions& options = {},
                                            unsigned threads = 1) {
  if (n_samples == 0) throw InputError("n_samples must be positive");
  const auto points = sample_uniform<S>(4 * n_samples, seed);

  std::vector<QuadrupleResult> results(n_samples);
  std::vector<char> failed(n_samples, 0);
  parallel_for(n_samples, threads, [&](std::size_t q) {
    LiftedPointCloud<S> cloud{{points.begin() + 4 * q, points.begin() + 4 * q + 4}};
    try {
      results[q] = classify_quadruple(cloud, options);
    } catch (const ResourceError&) {
      failed[q] = 1;
    } catch (const InputError&) {
      // coincident sample points; measure zero, counted with the skips
      failed[q] = 1;
    }
    results[q].index = q;
  });

  MeasureSample sample;
  sample.surface = S::kind;
  sample.total = n_samples;
  for (std::size_t q = 0; q < n_samples; ++q) {
    if (failed[q]) {
      ++sample.skipped;
      continue;
    }
    const auto& r = results[q];
    if (r.degenerate) ++sample.degenerate;
    if (r.trivial) continue;
    ++sample.persistent;
    if (!r.degenerate) ++sample.class_counts[r.homology->to_string()];
    sample.points.push_back(r);
  }
  sample.phi_bar = static_cast<double>(sample.persistent) / static_cast<double>(sample.total);
  return sample;
}

}  // namespace ambient_cycles
