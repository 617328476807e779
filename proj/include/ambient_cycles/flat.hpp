#pragma once

// The flat torus and flat Klein bottle, both covered by the Euclidean plane
// with the unit square [0,1)^2 as fundamental domain.

#include <cmath>
#include <compare>
#include <cstdint>
#include <random>

#include "abelian_class.hpp"
#include "error.hpp"
#include "options.hpp"
#include "surface_kind.hpp"

namespace ambient_cycles {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Lattice pair (n, m). Its meaning as a deck transformation depends on the
/// surface: a translation on the torus, a glide on the Klein bottle when m is odd.
struct LatticeElement {
  std::int64_t n = 0;
  std::int64_t m = 0;
  friend auto operator<=>(const LatticeElement&, const LatticeElement&) = default;
};

namespace detail {

inline double euclidean(const Vec2& p, const Vec2& q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline void validate_planar(const Vec2& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw DomainError("planar cover point has non-finite coordinates");
}

inline bool in_unit_square(const Vec2& p) {
  return p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0;
}

// floor(v) together with v - floor(v) clamped into [0, 1).
inline std::pair<std::int64_t, double> split_unit(double v) {
  double f = std::floor(v);
  double r = v - f;
  if (r >= 1.0) {
    f += 1.0;
    r = 0.0;
  }
  return {static_cast<std::int64_t>(f), r};
}

// Integers k with |base + k - target| <= bound, with a little slack so the
// range is a superset.
inline std::pair<std::int64_t, std::int64_t> integer_window(double target, double base,
                                                            double bound) {
  constexpr double slack = 1e-12;
  const double lo = std::ceil(target - base - bound - slack);
  const double hi = std::floor(target - base + bound + slack);
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

template <class Rng>
Vec2 sample_unit_square(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x = unit(rng);
  const double y = unit(rng);
  return {x, y};
}

}  // namespace detail

struct Torus {
  using point_type = Vec2;
  using element_type = LatticeElement;

  static constexpr SurfaceKind kind = SurfaceKind::Torus;
  static constexpr std::size_t free_rank = 2;
  static constexpr std::size_t torsion_rank = 0;
  static constexpr int coordinate_count = 2;

  static void validate(const Vec2& p) { detail::validate_planar(p); }

  static double distance(const Vec2& p, const Vec2& q) {
    validate(p);
    validate(q);
    return detail::euclidean(p, q);
  }

  static Vec2 act(const LatticeElement& g, const Vec2& p) {
    return {p.x + static_cast<double>(g.n), p.y + static_cast<double>(g.m)};
  }

  static LatticeElement identity() { return {}; }
  static LatticeElement multiply(const LatticeElement& g, const LatticeElement& h) {
    return {g.n + h.n, g.m + h.m};
  }
  static LatticeElement inverse(const LatticeElement& g) { return {-g.n, -g.m}; }
  static bool equal(const LatticeElement& g, const LatticeElement& h) { return g == h; }
  static bool is_identity(const LatticeElement& g) { return g == LatticeElement{}; }
  static bool canonical_less(const LatticeElement& g, const LatticeElement& h) { return g < h; }

  static AbelianClass abelianize(const LatticeElement& g) { return {{g.n, g.m}, {}}; }

  static bool in_domain(const Vec2& p) { return detail::in_unit_square(p); }

  /// Returns (h, r) with p = h.r and r in [0,1)^2.
  static std::pair<LatticeElement, Vec2> reduce(const Vec2& p) {
    validate(p);
    auto [n, x] = detail::split_unit(p.x);
    auto [m, y] = detail::split_unit(p.y);
    return {{n, m}, {x, y}};
  }

  /// Visits a superset of the g with d(p, g.q) <= bound.
  template <class Visitor>
  static void visit_candidates(const Vec2& p, const Vec2& q, double& bound,
                               const GeometryOptions&, Visitor&& visit) {
    const auto [m_lo, m_hi] = detail::integer_window(p.y, q.y, bound);
    const auto [n_lo, n_hi] = detail::integer_window(p.x, q.x, bound);
    for (auto n = n_lo; n <= n_hi; ++n)
      for (auto m = m_lo; m <= m_hi; ++m) {
        const LatticeElement g{n, m};
        visit(g, act(g, q));
      }
  }

  template <class Rng>
  static Vec2 sample(Rng& rng) {
    return detail::sample_unit_square(rng);
  }

  template <class Rng>
  static LatticeElement random_element(Rng& rng, int spread) {
    std::uniform_int_distribution<std::int64_t> coord(-spread, spread);
    const auto n = coord(rng);
    const auto m = coord(rng);
    return {n, m};
  }
};

struct KleinBottle {
  using point_type = Vec2;
  using element_type = LatticeElement;

  static constexpr SurfaceKind kind = SurfaceKind::KleinBottle;
  static constexpr std::size_t free_rank = 1;
  static constexpr std::size_t torsion_rank = 1;
  static constexpr int coordinate_count = 2;

  static constexpr int parity_sign(std::int64_t m) { return (m % 2 == 0) ? 1 : -1; }

  static void validate(const Vec2& p) { detail::validate_planar(p); }

  static double distance(const Vec2& p, const Vec2& q) {
    validate(p);
    validate(q);
    return detail::euclidean(p, q);
  }

  // (n, m).(x, y) = ((-1)^m x + n, y + m)
  static Vec2 act(const LatticeElement& g, const Vec2& p) {
    return {parity_sign(g.m) * p.x + static_cast<double>(g.n), p.y + static_cast<double>(g.m)};
  }

  static LatticeElement identity() { return {}; }
  // (n,m)(n',m') = (n + (-1)^m n', m + m')
  static LatticeElement multiply(const LatticeElement& g, const LatticeElement& h) {
    return {g.n + parity_sign(g.m) * h.n, g.m + h.m};
  }
  static LatticeElement inverse(const LatticeElement& g) {
    return {-parity_sign(g.m) * g.n, -g.m};
  }
  static bool equal(const LatticeElement& g, const LatticeElement& h) { return g == h; }
  static bool is_identity(const LatticeElement& g) { return g == LatticeElement{}; }
  static bool canonical_less(const LatticeElement& g, const LatticeElement& h) { return g < h; }

  // H_1 = Z (m) + Z/2 (n mod 2): the relation b a b^-1 = a^-1 forces 2a = 0.
  static AbelianClass abelianize(const LatticeElement& g) {
    return {{g.m}, {static_cast<int>(((g.n % 2) + 2) % 2)}};
  }

  static bool in_domain(const Vec2& p) { return detail::in_unit_square(p); }

  static std::pair<LatticeElement, Vec2> reduce(const Vec2& p) {
    validate(p);
    auto [m, y] = detail::split_unit(p.y);
    // undo the vertical glide first, then the horizontal translation
    auto [n, x] = detail::split_unit(parity_sign(m) * p.x);
    return {{parity_sign(m) * n, m}, {x, y}};
  }

  template <class Visitor>
  static void visit_candidates(const Vec2& p, const Vec2& q, double& bound,
                               const GeometryOptions&, Visitor&& visit) {
    const auto [m_lo, m_hi] = detail::integer_window(p.y, q.y, bound);
    for (auto m = m_lo; m <= m_hi; ++m) {
      const auto [n_lo, n_hi] = detail::integer_window(p.x, parity_sign(m) * q.x, bound);
      for (auto n = n_lo; n <= n_hi; ++n) {
        const LatticeElement g{n, m};
        visit(g, act(g, q));
      }
    }
  }

  template <class Rng>
  static Vec2 sample(Rng& rng) {
    return detail::sample_unit_square(rng);
  }

  template <class Rng>
  static LatticeElement random_element(Rng& rng, int spread) {
    return Torus::random_element(rng, spread);
  }
};

}  // namespace ambient_cycles
