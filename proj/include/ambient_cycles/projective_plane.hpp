#pragma once

#include <cmath>
#include <compare>
#include <random>

#include "abelian_class.hpp"
#include "error.hpp"
#include "options.hpp"
#include "surface_kind.hpp"

namespace ambient_cycles {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// a in Z/2, acting on the sphere by x -> (-1)^a x.
struct Flip {
  int a = 0;
  friend auto operator<=>(const Flip&, const Flip&) = default;
};

/// The round projective plane as the antipodal quotient of the unit sphere.
struct ProjectivePlane {
  using point_type = Vec3;
  using element_type = Flip;

  static constexpr SurfaceKind kind = SurfaceKind::ProjectivePlane;
  static constexpr std::size_t free_rank = 0;
  static constexpr std::size_t torsion_rank = 1;
  static constexpr int coordinate_count = 3;
  static constexpr double unit_tolerance = 1e-12;

  static void validate(const Vec3& p) {
    const double norm = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > unit_tolerance)
      throw DomainError("sphere cover point is not a unit vector");
  }

  // Great-circle angle, via atan2 so it stays accurate near 0 and pi.
  static double distance(const Vec3& p, const Vec3& q) {
    validate(p);
    validate(q);
    const double cx = p.y * q.z - p.z * q.y;
    const double cy = p.z * q.x - p.x * q.z;
    const double cz = p.x * q.y - p.y * q.x;
    const double dot = p.x * q.x + p.y * q.y + p.z * q.z;
    return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
  }

  static Vec3 act(const Flip& g, const Vec3& p) {
    if (g.a == 0) return p;
    return {-p.x, -p.y, -p.z};
  }

  static Flip identity() { return {}; }
  static Flip multiply(const Flip& g, const Flip& h) { return {(g.a + h.a) % 2}; }
  static Flip inverse(const Flip& g) { return g; }
  static bool equal(const Flip& g, const Flip& h) { return g == h; }
  static bool is_identity(const Flip& g) { return g.a == 0; }
  static bool canonical_less(const Flip& g, const Flip& h) { return g < h; }

  static AbelianClass abelianize(const Flip& g) { return {{}, {g.a}}; }

  /// Upper hemisphere; on the equator the tie is broken by y > 0, then x > 0.
  static bool in_domain(const Vec3& p) {
    if (p.z != 0.0) return p.z > 0.0;
    if (p.y != 0.0) return p.y > 0.0;
    return p.x > 0.0;
  }

  static std::pair<Flip, Vec3> reduce(const Vec3& p) {
    validate(p);
    if (in_domain(p)) return {Flip{0}, p};
    return {Flip{1}, act(Flip{1}, p)};
  }

  template <class Visitor>
  static void visit_candidates(const Vec3&, const Vec3& q, double&, const GeometryOptions&,
                               Visitor&& visit) {
    visit(Flip{0}, q);
    visit(Flip{1}, act(Flip{1}, q));
  }

  template <class Rng>
  static Vec3 sample(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
      const double x = normal(rng);
      const double y = normal(rng);
      const double z = normal(rng);
      const double norm = std::sqrt(x * x + y * y + z * z);
      if (norm < 1e-8) continue;
      Vec3 p{x / norm, y / norm, z / norm};
      return in_domain(p) ? p : act(Flip{1}, p);
    }
  }

  template <class Rng>
  static Flip random_element(Rng& rng, int) {
    std::uniform_int_distribution<int> bit(0, 1);
    return {bit(rng)};
  }
};

}  // namespace ambient_cycles
