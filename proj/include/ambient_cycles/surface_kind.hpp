#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ambient_cycles {

enum class SurfaceKind { Torus, KleinBottle, ProjectivePlane, GenusTwo };

inline constexpr std::array<SurfaceKind, 4> kAllSurfaces = {
    SurfaceKind::Torus, SurfaceKind::KleinBottle, SurfaceKind::ProjectivePlane,
    SurfaceKind::GenusTwo};

/// Short name used on the command line and in output files.
constexpr std::string_view surface_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::KleinBottle: return "klein";
    case SurfaceKind::ProjectivePlane: return "rp2";
    case SurfaceKind::GenusTwo: return "genus2";
  }
  return "?";
}

inline std::optional<SurfaceKind> parse_surface(std::string_view name) {
  for (auto kind : kAllSurfaces)
    if (surface_name(kind) == name) return kind;
  return std::nullopt;
}

}  // namespace ambient_cycles
