#pragma once

// Surface-generic operations: orbit enumeration, quotient distance and
// uniform sampling, written once against the per-surface policies.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "flat.hpp"
#include "genus_two.hpp"
#include "options.hpp"
#include "projective_plane.hpp"

namespace ambient_cycles {

template <class S>
concept Surface = requires(const typename S::point_type& p, const typename S::element_type& g) {
  { S::kind } -> std::convertible_to<SurfaceKind>;
  { S::distance(p, p) } -> std::convertible_to<double>;
  { S::act(g, p) } -> std::same_as<typename S::point_type>;
  { S::multiply(g, g) } -> std::same_as<typename S::element_type>;
  { S::inverse(g) } -> std::same_as<typename S::element_type>;
  { S::identity() } -> std::same_as<typename S::element_type>;
  { S::equal(g, g) } -> std::same_as<bool>;
  { S::abelianize(g) } -> std::same_as<AbelianClass>;
  { S::in_domain(p) } -> std::same_as<bool>;
  { S::reduce(p) };
};

template <Surface S>
using Point = typename S::point_type;
template <Surface S>
using Element = typename S::element_type;

/// Calls `fn` with a default-constructed policy for the runtime surface tag.
template <class Fn>
decltype(auto) with_surface(SurfaceKind kind, Fn&& fn) {
  switch (kind) {
    case SurfaceKind::Torus: return fn(Torus{});
    case SurfaceKind::KleinBottle: return fn(KleinBottle{});
    case SurfaceKind::ProjectivePlane: return fn(ProjectivePlane{});
    case SurfaceKind::GenusTwo: return fn(GenusTwo{});
  }
  return fn(Torus{});
}

template <Surface S>
bool canonical_less(const Element<S>& g, const Element<S>& h) {
  return S::canonical_less(g, h);
}

/// Every g with cover distance d(p, g.q) <= bound, sorted canonically.
template <Surface S>
std::vector<Element<S>> enumerate_candidates(const Point<S>& p, const Point<S>& q, double bound,
                                             const GeometryOptions& options = {}) {
  if (!(bound >= 0.0)) throw InputError("enumeration bound must be non-negative");
  const auto [hp, rp] = S::reduce(p);
  const auto [hq, rq] = S::reduce(q);
  const auto hq_inv = S::inverse(hq);
  std::vector<Element<S>> out;
  double radius = bound;
  S::visit_candidates(rp, rq, radius, options, [&](const Element<S>& g, const Point<S>& gq) {
    if (S::distance(rp, gq) <= bound) out.push_back(S::multiply(S::multiply(hp, g), hq_inv));
  });
  std::sort(out.begin(), out.end(), canonical_less<S>);
  return out;
}

template <Surface S>
struct BaseDistance {
  double length = 0.0;
  // All orbit elements within the tie tolerance of the minimum, sorted
  // canonically. More than one means the pair is non-generic.
  std::vector<Element<S>> minimizers;

  bool tied() const { return minimizers.size() > 1; }
  const Element<S>& best() const { return minimizers.front(); }
};

/// Quotient distance inf_g d(p, g.q) together with its minimizing elements.
template <Surface S>
BaseDistance<S> base_distance(const Point<S>& p, const Point<S>& q,
                              const GeometryOptions& options = {}) {
  const auto [hp, rp] = S::reduce(p);
  const auto [hq, rq] = S::reduce(q);
  const double tol = options.tie_tolerance;

  struct Hit {
    Element<S> g;
    double d;
  };
  std::vector<Hit> hits;
  double best = S::distance(rp, rq);
  double radius = best + tol;
  S::visit_candidates(rp, rq, radius, options, [&](const Element<S>& g, const Point<S>& gq) {
    const double d = S::distance(rp, gq);
    if (d > best + tol) return;
    hits.push_back({g, d});
    if (d < best) {
      best = d;
      radius = best + tol;
    }
  });

  BaseDistance<S> result;
  result.length = best;
  const auto hq_inv = S::inverse(hq);
  for (const auto& hit : hits)
    if (hit.d <= best + tol)
      result.minimizers.push_back(S::multiply(S::multiply(hp, hit.g), hq_inv));
  std::sort(result.minimizers.begin(), result.minimizers.end(), canonical_less<S>);
  return result;
}

/// `count` points in the canonical fundamental domain, uniform for the
/// Riemannian area, fully determined by `seed`.
template <Surface S>
std::vector<Point<S>> sample_uniform(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InputError("sample count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point<S>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(S::sample(rng));
  return out;
}

template <Surface S>
bool fundamental_domain_contains(const Point<S>& p) {
  return S::in_domain(p);
}

}  // namespace ambient_cycles
