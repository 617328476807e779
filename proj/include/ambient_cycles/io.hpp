#pragma once

// File formats: CSV point clouds in, JSON / JSONL reports out. Group
// elements are written exactly (integer pairs, a bit, or a generator word).

#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "persistence.hpp"

namespace ambient_cycles::io {

using nlohmann::json;

template <Surface S>
json element_to_json(const Element<S>& g) {
  if constexpr (std::is_same_v<S, GenusTwo>) {
    return g.to_string();
  } else if constexpr (std::is_same_v<S, ProjectivePlane>) {
    return g.a;
  } else {
    return json::array({g.n, g.m});
  }
}

template <Surface S>
Element<S> element_from_json(const json& j) {
  try {
    if constexpr (std::is_same_v<S, GenusTwo>) {
      return SurfaceWord::parse(j.get<std::string>());
    } else if constexpr (std::is_same_v<S, ProjectivePlane>) {
      const int a = j.get<int>();
      if (a != 0 && a != 1) throw InputError("projective-plane element must be 0 or 1");
      return Flip{a};
    } else {
      if (!j.is_array() || j.size() != 2) throw InputError("lattice element must be [n, m]");
      return LatticeElement{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad group element: ") + e.what());
  }
}

inline json class_to_json(const AbelianClass& c) {
  return {{"free", c.free_part}, {"torsion", c.torsion_part}};
}

inline AbelianClass class_from_json(const json& j) {
  return {j.at("free").get<std::vector<std::int64_t>>(), j.at("torsion").get<std::vector<int>>()};
}

/// Builds a cover point from its coordinates: (x, y) on the plane,
/// (x, y, z) on the sphere, (re, im) on the disk.
template <Surface S>
Point<S> point_from_coords(const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != S::coordinate_count)
    throw InputError("expected " + std::to_string(S::coordinate_count) + " coordinates, got " +
                     std::to_string(c.size()));
  Point<S> p;
  if constexpr (std::is_same_v<S, GenusTwo>) {
    p = Complex{c[0], c[1]};
  } else if constexpr (std::is_same_v<S, ProjectivePlane>) {
    p = Vec3{c[0], c[1], c[2]};
  } else {
    p = Vec2{c[0], c[1]};
  }
  S::validate(p);
  return p;
}

template <Surface S>
std::vector<double> point_to_coords(const Point<S>& p) {
  if constexpr (std::is_same_v<S, GenusTwo>) {
    return {p.real(), p.imag()};
  } else if constexpr (std::is_same_v<S, ProjectivePlane>) {
    return {p.x, p.y, p.z};
  } else {
    return {p.x, p.y};
  }
}

inline std::string csv_header(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::ProjectivePlane: return "x,y,z";
    case SurfaceKind::GenusTwo: return "re,im";
    default: return "x,y";
  }
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  std::istringstream in(token);
  in >> out;
  return !in.fail() && in.eof();
}

}  // namespace detail

/// One point per row, comma separated. A first row that does not parse as
/// numbers is taken as a header; blank lines and '#' comments are skipped.
template <Surface S>
LiftedPointCloud<S> read_cloud_csv(std::istream& in) {
  LiftedPointCloud<S> cloud;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = detail::trim(line);
    if (row.empty() || row.front() == '#') continue;
    std::vector<double> coords;
    bool numeric = true;
    std::stringstream fields(row);
    std::string field;
    while (std::getline(fields, field, ',')) {
      double v = 0.0;
      if (!detail::parse_double(detail::trim(field), v)) {
        numeric = false;
        break;
      }
      coords.push_back(v);
    }
    if (!numeric) {
      if (first_data_row) {
        first_data_row = false;
        continue;
      }
      throw InputError("line " + std::to_string(line_no) + ": non-numeric field");
    }
    first_data_row = false;
    try {
      cloud.points.push_back(point_from_coords<S>(coords));
    } catch (const DomainError& e) {
      throw DomainError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (cloud.points.empty()) throw InputError("point cloud file contains no points");
  return cloud;
}

inline json graph_to_json(const EpsilonGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.i, e.j, e.length, e.degenerate}));
  json triangles = json::array();
  for (const auto& t : g.triangles) triangles.push_back(json::array({t[0], t[1], t[2]}));
  return {{"n", g.n}, {"epsilon", g.epsilon}, {"edges", edges}, {"triangles", triangles}};
}

template <Surface S>
json transition_to_json(const TransitionMap<S>& t) {
  json edges = json::array();
  const auto& g = t.graph();
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    edges.push_back({{"i", g.edges[e].i},
                     {"j", g.edges[e].j},
                     {"element", element_to_json<S>(t.forward(e))},
                     {"degenerate", t.degenerate(e)}});
  return {{"edges", edges}};
}

template <Surface S>
json classification_to_json(const CloudClassification<S>& result) {
  json cycles = json::array();
  for (const auto& c : result.classes)
    cycles.push_back({{"vertices", c.cycle},
                      {"class", class_to_json(c.homology)},
                      {"unreliable", c.unreliable}});
  json violations = json::array();
  for (const auto& t : result.cocycle.violations) violations.push_back(json::array({t[0], t[1], t[2]}));
  return {{"surface", std::string(surface_name(S::kind))},
          {"graph", graph_to_json(result.graph)},
          {"transition", transition_to_json(result.transition)},
          {"cycles", cycles},
          {"cocycle", {{"checked", result.cocycle.checked}, {"violations", violations}}},
          {"degenerate_edges", result.degenerate_edges},
          {"unreliable_cycles", result.unreliable_cycles}};
}

/// One JSONL record per persistent quadruple.
inline json quadruple_record(SurfaceKind kind, const QuadrupleResult& r) {
  const auto& c = r.homology;
  return {{"surface", std::string(surface_name(kind))},
          {"index", r.index},
          {"birth", r.birth},
          {"death", r.death},
          {"class_free", c ? json(c->free_part) : json::array()},
          {"class_torsion", c ? json(c->torsion_part) : json::array()},
          {"degenerate", r.degenerate}};
}

inline json summary_to_json(const MeasureSample& s) {
  return {{"surface", std::string(surface_name(s.surface))},
          {"total", s.total},
          {"persistent", s.persistent},
          {"phi_bar", s.phi_bar},
          {"class_counts", s.class_counts},
          {"degenerate", s.degenerate},
          {"skipped", s.skipped}};
}

}  // namespace ambient_cycles::io
