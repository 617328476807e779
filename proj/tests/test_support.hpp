#pragma once

// Independent oracles and generators shared by the unit and acceptance
// suites. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <ambient_cycles/ambient_cycles.hpp>

namespace ambient_cycles::testing {

/// Rank over GF(2) of a set of 0/1 row vectors.
inline std::size_t gf2_rank(std::vector<std::vector<char>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

/// First Betti number of a graph, as dim ker of the GF(2) vertex-edge
/// boundary map: |E| - rank(boundary).
inline std::size_t graph_betti1(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<char>> rows;
  for (const auto& [i, j] : edges) {
    std::vector<char> row(n, 0);
    row[i] = 1;
    row[j] = 1;
    rows.push_back(std::move(row));
  }
  return edges.size() - gf2_rank(rows);
}

struct BruteForceBar {
  bool tied = false;  // two of the six distances coincide within tolerance
  std::optional<std::pair<double, double>> bar;
};

/// Degree-one Rips persistence of four points by explicit filtration: insert
/// the six edges in increasing order and track beta_1 of the flag complex,
/// computed as (cycle rank) - rank of the triangle boundaries over GF(2).
inline BruteForceBar brute_force_rips_h1(const std::array<std::array<double, 4>, 4>& d,
                                         double tie_tolerance = 1e-9) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) pairs.emplace_back(i, j);
  std::sort(pairs.begin(), pairs.end(),
            [&](auto a, auto b) { return d[a.first][a.second] < d[b.first][b.second]; });

  BruteForceBar out;
  for (std::size_t k = 1; k < pairs.size(); ++k)
    if (std::abs(d[pairs[k].first][pairs[k].second] - d[pairs[k - 1].first][pairs[k - 1].second]) <=
        tie_tolerance)
      out.tied = true;

  auto edge_col = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i > j) std::swap(i, j);
    std::size_t col = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b, ++col)
        if (a == i && b == j) return col;
    return col;
  };

  std::optional<double> birth;
  for (std::size_t step = 1; step <= pairs.size(); ++step) {
    std::vector<std::pair<std::size_t, std::size_t>> present(pairs.begin(), pairs.begin() + step);
    std::array<std::array<bool, 4>, 4> adj{};
    for (auto [i, j] : present) adj[i][j] = adj[j][i] = true;
    std::vector<std::vector<char>> tri_rows;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b)
        for (std::size_t c = b + 1; c < 4; ++c)
          if (adj[a][b] && adj[b][c] && adj[a][c]) {
            std::vector<char> row(6, 0);
            row[edge_col(a, b)] = row[edge_col(b, c)] = row[edge_col(a, c)] = 1;
            tri_rows.push_back(std::move(row));
          }
    const auto beta1 = graph_betti1(4, present) - gf2_rank(tri_rows);
    const double value = d[pairs[step - 1].first][pairs[step - 1].second];
    if (beta1 > 0 && !birth) birth = value;
    if (beta1 == 0 && birth) {
      if (value > *birth) out.bar = std::pair{*birth, value};
      return out;
    }
  }
  return out;
}

/// inf_g d(p, g.q) by scanning an explicit finite set of group elements.
template <Surface S>
double brute_force_orbit_distance(const Point<S>& p, const Point<S>& q,
                                  const std::vector<Element<S>>& group_window) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : group_window) best = std::min(best, S::distance(p, S::act(g, q)));
  return best;
}

inline std::vector<LatticeElement> lattice_window(int half_width) {
  std::vector<LatticeElement> out;
  for (int n = -half_width; n <= half_width; ++n)
    for (int m = -half_width; m <= half_width; ++m) out.push_back({n, m});
  return out;
}

/// All freely reduced words of length <= max_length.
inline std::vector<SurfaceWord> words_up_to(int max_length) {
  std::vector<SurfaceWord> out{SurfaceWord{}};
  std::vector<SurfaceWord> layer{SurfaceWord{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<SurfaceWord> next;
    for (const auto& w : layer)
      for (std::uint8_t code = 0; code < SurfaceWord::kLetterCount; ++code) {
        if (!w.letters().empty() && w.letters().back() == (code ^ 1)) continue;
        next.push_back(w * SurfaceWord::letter(code));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Uniform point of the fundamental domain pushed to a random sheet.
template <Surface S, class Rng>
Point<S> random_lift(Rng& rng, int spread) {
  return S::act(S::random_element(rng, spread), S::sample(rng));
}

/// Spread of random re-lifts: lattice offsets up to 3, or genus-two words of
/// length up to 3 so lifted points stay well inside double precision.
inline constexpr int kLiftSpread = 3;

/// A point at base distance <= radius from `center`, uniform on a small
/// cover-space disk (flat, spherical cap, or hyperbolic disk via rejection).
template <Surface S, class Rng>
Point<S> jitter(Rng& rng, const Point<S>& center, double radius) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    if constexpr (std::is_same_v<S, GenusTwo>) {
      // move the centre to the origin, perturb, move back
      const Complex c = center;
      const Complex local{unit(rng) * std::tanh(radius / 2.0), unit(rng) * std::tanh(radius / 2.0)};
      const Complex z = (local + c) / (std::conj(c) * local + 1.0);
      if (hyperbolic::distance(z, c) <= radius && std::norm(z) < 1.0) return z;
    } else if constexpr (std::is_same_v<S, ProjectivePlane>) {
      Vec3 v{center.x + unit(rng) * radius, center.y + unit(rng) * radius,
             center.z + unit(rng) * radius};
      const double norm = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
      v = {v.x / norm, v.y / norm, v.z / norm};
      if (S::distance(v, center) <= radius) return v;
    } else {
      const Vec2 v{center.x + unit(rng) * radius, center.y + unit(rng) * radius};
      if (S::distance(v, center) <= radius) return v;
    }
  }
}

}  // namespace ambient_cycles::testing
