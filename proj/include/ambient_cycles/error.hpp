#pragma once

#include <stdexcept>
#include <string>

namespace ambient_cycles {

// Malformed or out-of-domain input: non-unit sphere vectors, points outside
// the Poincare disk, duplicate base points, walks that leave the graph.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A cover point violates its model's constraints.
class DomainError : public InputError {
 public:
  explicit DomainError(const std::string& what) : InputError(what) {}
};

// Orbit enumeration could not be certified within the configured limits.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ambient_cycles
