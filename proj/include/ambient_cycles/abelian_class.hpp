#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambient_cycles {

/// An element of the abelianized deck group, written as a free part in
/// Z^r and a torsion part in (Z/2)^s.
struct AbelianClass {
  std::vector<std::int64_t> free_part;
  std::vector<int> torsion_part;  // residues in {0, 1}

  AbelianClass() = default;
  AbelianClass(std::vector<std::int64_t> free, std::vector<int> torsion)
      : free_part(std::move(free)), torsion_part(std::move(torsion)) {
    for (int& t : torsion_part) t = ((t % 2) + 2) % 2;
  }

  static AbelianClass zero(std::size_t free_rank, std::size_t torsion_rank) {
    return {std::vector<std::int64_t>(free_rank, 0), std::vector<int>(torsion_rank, 0)};
  }

  bool is_zero() const {
    for (auto f : free_part)
      if (f != 0) return false;
    for (auto t : torsion_part)
      if (t != 0) return false;
    return true;
  }

  AbelianClass& operator+=(const AbelianClass& other) {
    check_shape(other);
    for (std::size_t i = 0; i < free_part.size(); ++i) free_part[i] += other.free_part[i];
    for (std::size_t i = 0; i < torsion_part.size(); ++i)
      torsion_part[i] = (torsion_part[i] + other.torsion_part[i]) % 2;
    return *this;
  }

  AbelianClass& operator*=(std::int64_t k) {
    for (auto& f : free_part) f *= k;
    const int parity = static_cast<int>(((k % 2) + 2) % 2);
    for (auto& t : torsion_part) t = (t * parity) % 2;
    return *this;
  }

  friend AbelianClass operator+(AbelianClass a, const AbelianClass& b) { return a += b; }
  friend AbelianClass operator*(std::int64_t k, AbelianClass a) { return a *= k; }
  friend AbelianClass operator-(AbelianClass a) { return a *= -1; }

  friend bool operator==(const AbelianClass&, const AbelianClass&) = default;

  /// Representative of {c, -c} with the first nonzero free coordinate
  /// positive. Torsion residues are their own negatives.
  AbelianClass canonical_sign() const {
    for (auto f : free_part) {
      if (f < 0) return -*this;
      if (f > 0) break;
    }
    return *this;
  }

  /// "(f0,f1,...)" or "(f0;t0)" when a torsion part is present.
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < free_part.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(free_part[i]);
    }
    if (!torsion_part.empty()) {
      out += ";";
      for (std::size_t i = 0; i < torsion_part.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(torsion_part[i]);
      }
    }
    return out + ")";
  }

 private:
  void check_shape(const AbelianClass& other) const {
    if (other.free_part.size() != free_part.size() ||
        other.torsion_part.size() != torsion_part.size())
      throw std::invalid_argument("AbelianClass: mismatched group shapes");
  }
};

}  // namespace ambient_cycles
