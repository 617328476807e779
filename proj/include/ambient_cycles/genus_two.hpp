#pragma once

// Genus-two surface as the quotient of the Poincare disk by the regular
// octagon group with generators
//
//   g_k . z = (z + w^k s) / (w^-k s z + 1),   s = sqrt(1 - c^2),
//
// c = tan(pi/8), w = exp(i pi/4), subject to the single relation
// g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abelian_class.hpp"
#include "error.hpp"
#include "options.hpp"
#include "surface_kind.hpp"

namespace ambient_cycles {

using Complex = std::complex<double>;

namespace hyperbolic {

inline const double kC = std::tan(std::numbers::pi / 8.0);
inline const double kS = std::sqrt(1.0 - kC * kC);
inline const Complex kOmega = std::polar(1.0, std::numbers::pi / 4.0);
// Hyperbolic circumradius of the regular octagon with interior angles pi/4.
inline const double kCircumradius = std::acosh(1.0 / (kC * kC));
// Largest Euclidean modulus over the octagon (its vertices sit at 2^-1/4).
inline const double kDomainEuclideanRadius = std::tanh(kCircumradius / 2.0);

// std::norm is the squared modulus; std::abs would go through hypot.
inline double modulus(Complex z) { return std::sqrt(std::norm(z)); }

inline double distance(Complex z, Complex w) {
  const double ratio = std::sqrt(std::norm(z - w) / std::norm(1.0 - std::conj(z) * w));
  return 2.0 * std::atanh(std::min(ratio, 1.0));
}

/// tanh(d(z, w) / 2)^2, monotone in the distance.
inline double pseudo_distance_sq(Complex z, Complex w) {
  return std::norm(z - w) / std::norm(1.0 - std::conj(z) * w);
}

/// Hyperbolic distance from the origin.
inline double norm(Complex z) { return 2.0 * std::atanh(std::min(modulus(z), 1.0)); }

}  // namespace hyperbolic

/// Orientation-preserving disk isometry [[a, b], [conj b, conj a]] with
/// |a|^2 - |b|^2 = 1.
struct Moebius {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  Complex apply(Complex z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }

  Moebius inverse() const { return {std::conj(a), -b}; }

  double determinant() const { return std::norm(a) - std::norm(b); }
  double trace() const { return 2.0 * a.real(); }

  friend Moebius operator*(const Moebius& m, const Moebius& n) {
    return {m.a * n.a + m.b * std::conj(n.b), m.a * n.b + m.b * std::conj(n.a)};
  }

  /// Equality in PSU(1,1), i.e. up to global sign.
  bool projectively_equal(const Moebius& other, double tol) const {
    const double scale = std::max(1.0, std::abs(a));
    auto close = [&](Complex sa, Complex sb) {
      return std::abs(a - sa) <= tol * scale && std::abs(b - sb) <= tol * scale;
    };
    return close(other.a, other.b) || close(-other.a, -other.b);
  }
};

/// A word in g0..g3 and their inverses together with its matrix.
///
/// Letters are coded 2k for g_k and 2k+1 for g_k^-1. Words are kept freely
/// reduced but are not normal forms: two different words can name the same
/// group element, which is detected by comparing matrices.
class SurfaceWord {
 public:
  static constexpr int kLetterCount = 8;

  SurfaceWord() = default;

  static const Moebius& letter_matrix(std::uint8_t letter) {
    static const std::array<Moebius, kLetterCount> table = [] {
      std::array<Moebius, kLetterCount> out{};
      for (int k = 0; k < 4; ++k) {
        // The raw matrix has determinant c^2; dividing by c normalizes it.
        const Moebius g{Complex(1.0 / hyperbolic::kC, 0.0),
                        std::pow(hyperbolic::kOmega, k) * hyperbolic::kS / hyperbolic::kC};
        out[2 * k] = g;
        out[2 * k + 1] = g.inverse();
      }
      return out;
    }();
    return table[letter];
  }

  static SurfaceWord letter(std::uint8_t code) {
    SurfaceWord w;
    w.letters_.push_back(code);
    w.matrix_ = letter_matrix(code);
    return w;
  }

  static SurfaceWord generator(int k, bool inverse = false) {
    return letter(static_cast<std::uint8_t>(2 * k + (inverse ? 1 : 0)));
  }

  static SurfaceWord from_letters(const std::vector<std::uint8_t>& letters) {
    SurfaceWord w;
    for (auto code : letters) {
      if (code >= kLetterCount) throw InputError("generator letter out of range");
      w = w * letter(code);
    }
    return w;
  }

  const std::vector<std::uint8_t>& letters() const { return letters_; }
  const Moebius& matrix() const { return matrix_; }
  std::size_t length() const { return letters_.size(); }

  SurfaceWord inverse() const {
    SurfaceWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(*it ^ 1);
    w.matrix_ = matrix_.inverse();
    return w;
  }

  friend SurfaceWord operator*(const SurfaceWord& lhs, const SurfaceWord& rhs) {
    SurfaceWord w;
    w.matrix_ = lhs.matrix_ * rhs.matrix_;
    std::size_t cancel = 0;
    const std::size_t nl = lhs.letters_.size();
    while (cancel < nl && cancel < rhs.letters_.size() &&
           lhs.letters_[nl - 1 - cancel] == (rhs.letters_[cancel] ^ 1))
      ++cancel;
    w.letters_.reserve(nl + rhs.letters_.size() - 2 * cancel);
    w.letters_.insert(w.letters_.end(), lhs.letters_.begin(),
                      lhs.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
    w.letters_.insert(w.letters_.end(),
                      rhs.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                      rhs.letters_.end());
    // rebuild from the reduced word so cancelled letters leave no rounding
    if (cancel > 0) w.matrix_ = from_letters(w.letters_).matrix_;
    return w;
  }

  /// "g0.g1'.g2" with ' marking an inverse; the identity is "e".
  std::string to_string() const {
    if (letters_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += '.';
      out += 'g';
      out += static_cast<char>('0' + letters_[i] / 2);
      if (letters_[i] & 1) out += '\'';
    }
    return out;
  }

  static SurfaceWord parse(std::string_view text) {
    if (text == "e" || text.empty()) return {};
    std::vector<std::uint8_t> codes;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto end = std::min(text.find('.', pos), text.size());
      const auto token = text.substr(pos, end - pos);
      const bool inv = token.size() == 3 && token[2] == '\'';
      if (!(token.size() == 2 || inv) || token[0] != 'g' || token[1] < '0' || token[1] > '3')
        throw InputError("malformed generator word: " + std::string(text));
      codes.push_back(static_cast<std::uint8_t>(2 * (token[1] - '0') + (inv ? 1 : 0)));
      pos = end + 1;
    }
    return from_letters(codes);
  }

 private:
  std::vector<std::uint8_t> letters_;
  Moebius matrix_{};
};

/// Group element together with where it sends the origin.
struct OrbitEntry {
  SurfaceWord element;
  Complex origin_image;
  double displacement = 0.0;
};

/// Every group element g with d(0, g.0) <= radius, sorted by displacement.
///
/// Built by a breadth-first walk over tiles of the octagon tiling, pruned at
/// radius + circumradius: each tile crossed by the geodesic from 0 to g.0
/// lies within that pruning radius, and consecutive tiles share a side, so
/// no element inside `radius` can be missed.
class OrbitTable {
 public:
  static OrbitTable build(double radius, std::size_t max_word_length,
                          std::size_t max_entries = 4'000'000) {
    const double prune = radius + hyperbolic::kCircumradius + 1e-9;
    std::vector<OrbitEntry> found;
    found.push_back({SurfaceWord{}, Complex{}, 0.0});

    // Orbit points of distinct elements are at least the systole (~3.06)
    // apart, so a coarse grid lookup with a tight match tolerance suffices.
    constexpr double cell = 1e-7;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    auto cell_key = [](std::int64_t i, std::int64_t j) {
      return (static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(j & 0xffffffff);
    };
    auto lookup = [&](Complex z) {
      const auto i = static_cast<std::int64_t>(std::floor(z.real() / cell));
      const auto j = static_cast<std::int64_t>(std::floor(z.imag() / cell));
      for (std::int64_t di = -1; di <= 1; ++di)
        for (std::int64_t dj = -1; dj <= 1; ++dj) {
          auto it = grid.find(cell_key(i + di, j + dj));
          if (it == grid.end()) continue;
          for (auto idx : it->second)
            if (std::abs(found[idx].origin_image - z) < 1e-3 * cell) return true;
        }
      return false;
    };
    auto insert = [&](std::size_t idx) {
      const Complex z = found[idx].origin_image;
      grid[cell_key(static_cast<std::int64_t>(std::floor(z.real() / cell)),
                    static_cast<std::int64_t>(std::floor(z.imag() / cell)))]
          .push_back(idx);
    };
    insert(0);

    for (std::size_t head = 0; head < found.size(); ++head) {
      for (std::uint8_t code = 0; code < SurfaceWord::kLetterCount; ++code) {
        const auto& word = found[head].element;
        if (!word.letters().empty() && word.letters().back() == (code ^ 1)) continue;
        SurfaceWord next = word * SurfaceWord::letter(code);
        const Complex image = next.matrix().apply(Complex{});
        const double disp = hyperbolic::norm(image);
        if (disp > prune || lookup(image)) continue;
        if (next.length() > max_word_length)
          throw ResourceError("orbit enumeration needs words longer than " +
                              std::to_string(max_word_length));
        if (found.size() >= max_entries)
          throw ResourceError("orbit enumeration exceeded " + std::to_string(max_entries) +
                              " elements");
        found.push_back({std::move(next), image, disp});
        insert(found.size() - 1);
      }
    }

    OrbitTable table;
    table.radius_ = radius;
    for (auto& entry : found)
      if (entry.displacement <= radius + 1e-9) table.entries_.push_back(std::move(entry));
    std::stable_sort(table.entries_.begin(), table.entries_.end(),
                     [](const OrbitEntry& l, const OrbitEntry& r) {
                       return l.displacement < r.displacement;
                     });
    for (const auto& e : table.entries_)
      table.max_word_length_ = std::max(table.max_word_length_, e.element.length());
    return table;
  }

  double radius() const { return radius_; }
  const std::vector<OrbitEntry>& entries() const { return entries_; }
  std::size_t max_word_length() const { return max_word_length_; }

 private:
  double radius_ = 0.0;
  std::size_t max_word_length_ = 0;
  std::vector<OrbitEntry> entries_;
};

struct GenusTwo {
  using point_type = Complex;
  using element_type = SurfaceWord;

  static constexpr SurfaceKind kind = SurfaceKind::GenusTwo;
  static constexpr std::size_t free_rank = 4;
  static constexpr std::size_t torsion_rank = 0;
  static constexpr int coordinate_count = 2;
  static constexpr double matrix_tolerance = 1e-9;

  /// Radius of the shared orbit table: enough for any pair of points in the
  /// fundamental domain (two circumradii out, a domain diameter across).
  static double default_table_radius() { return 4.0 * hyperbolic::kCircumradius + 0.25; }

  static const OrbitTable& default_table() {
    static const OrbitTable table = OrbitTable::build(default_table_radius(), 64);
    return table;
  }

  static void validate(const Complex& z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !(std::norm(z) < 1.0))
      throw DomainError("disk cover point must satisfy |z| < 1");
  }

  static double distance(const Complex& z, const Complex& w) {
    validate(z);
    validate(w);
    return hyperbolic::distance(z, w);
  }

  static Complex act(const SurfaceWord& g, const Complex& z) { return g.matrix().apply(z); }

  static SurfaceWord identity() { return {}; }
  static SurfaceWord multiply(const SurfaceWord& g, const SurfaceWord& h) { return g * h; }
  static SurfaceWord inverse(const SurfaceWord& g) { return g.inverse(); }
  static bool equal(const SurfaceWord& g, const SurfaceWord& h) {
    return g.matrix().projectively_equal(h.matrix(), matrix_tolerance);
  }
  static bool is_identity(const SurfaceWord& g) {
    return g.matrix().projectively_equal(Moebius{}, matrix_tolerance);
  }
  /// Shortlex on letter codes.
  static bool canonical_less(const SurfaceWord& g, const SurfaceWord& h) {
    if (g.length() != h.length()) return g.length() < h.length();
    return g.letters() < h.letters();
  }

  /// Signed exponent sums of g0..g3; well defined because the relator has
  /// zero exponent sum in every generator.
  static AbelianClass abelianize(const SurfaceWord& g) {
    std::vector<std::int64_t> sums(4, 0);
    for (auto code : g.letters()) sums[code / 2] += (code & 1) ? -1 : 1;
    return {std::move(sums), {}};
  }

  /// Nonidentity elements of word length at most two with their origin images.
  static const std::vector<OrbitEntry>& short_words() {
    static const std::vector<OrbitEntry> words = [] {
      std::vector<OrbitEntry> out;
      for (std::uint8_t a = 0; a < SurfaceWord::kLetterCount; ++a) {
        const auto wa = SurfaceWord::letter(a);
        out.push_back({wa, wa.matrix().apply(Complex{}), 0.0});
        for (std::uint8_t b = 0; b < SurfaceWord::kLetterCount; ++b) {
          if (b == (a ^ 1)) continue;
          const auto wb = wa * SurfaceWord::letter(b);
          out.push_back({wb, wb.matrix().apply(Complex{}), 0.0});
        }
      }
      for (auto& e : out) e.displacement = hyperbolic::norm(e.origin_image);
      return out;
    }();
    return words;
  }

  /// Dirichlet domain at the origin, tested against the word ball of radius two.
  static bool in_domain(const Complex& z) {
    if (!(std::norm(z) < 1.0)) return false;
    const double to_origin = std::norm(z);
    for (const auto& e : short_words())
      if (hyperbolic::pseudo_distance_sq(z, e.origin_image) < to_origin) return false;
    return true;
  }

  /// Returns (h, r) with z = h.r and r in the Dirichlet domain.
  static std::pair<SurfaceWord, Complex> reduce(const Complex& z) {
    validate(z);
    SurfaceWord h;
    Complex r = z;
    for (int iter = 0; iter < 10'000; ++iter) {
      double best = std::norm(r);
      const OrbitEntry* step = nullptr;
      for (const auto& e : short_words()) {
        const double d = hyperbolic::pseudo_distance_sq(r, e.origin_image);
        if (d < best) {
          best = d;
          step = &e;
        }
      }
      if (!step) return {h, r};
      // r is closer to s.0 than to 0, so s^-1.r is closer to the origin.
      r = step->element.matrix().inverse().apply(r);
      h = h * step->element;
    }
    throw ResourceError("fundamental-domain reduction did not converge");
  }

  /// Visits every g with d(p, g.q) <= bound for p, q in the fundamental
  /// domain. The visitor may shrink `bound` while the walk runs.
  template <class Visitor>
  static void visit_candidates(const Complex& p, const Complex& q, double& bound,
                               const GeometryOptions& options, Visitor&& visit) {
    const double offset = hyperbolic::norm(p) + hyperbolic::norm(q);
    const double needed = offset + bound;
    if (needed <= default_table().radius()) {
      walk(default_table(), q, offset, bound, options, visit);
    } else {
      const auto table = OrbitTable::build(needed, static_cast<std::size_t>(std::max(
                                                       options.max_word_length, 0)));
      walk(table, q, offset, bound, options, visit);
    }
  }

  /// Rejection sampling of the hyperbolic area measure on the Dirichlet domain.
  template <class Rng>
  static Complex sample(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rmax = hyperbolic::kDomainEuclideanRadius;
    const double floor_weight = 1.0 - rmax * rmax;
    for (;;) {
      const double radius = rmax * std::sqrt(unit(rng));
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      const double accept = unit(rng);
      const Complex z = std::polar(radius, angle);
      const double w = floor_weight / (1.0 - radius * radius);
      if (accept < w * w && in_domain(z)) return z;
    }
  }

  /// Random freely reduced word of length at most `max_length`.
  template <class Rng>
  static SurfaceWord random_element(Rng& rng, int max_length) {
    std::uniform_int_distribution<int> len_dist(0, max_length);
    std::uniform_int_distribution<int> letter_dist(0, SurfaceWord::kLetterCount - 1);
    const int len = len_dist(rng);
    std::vector<std::uint8_t> letters;
    while (static_cast<int>(letters.size()) < len) {
      const auto code = static_cast<std::uint8_t>(letter_dist(rng));
      if (!letters.empty() && letters.back() == (code ^ 1)) continue;
      letters.push_back(code);
    }
    return SurfaceWord::from_letters(letters);
  }

 private:
  template <class Visitor>
  static void walk(const OrbitTable& table, const Complex& q, double offset,
                   double& bound, const GeometryOptions& options, Visitor& visit) {
    for (const auto& entry : table.entries()) {
      if (entry.displacement > offset + bound + 1e-9) break;
      if (static_cast<int>(entry.element.length()) > options.max_word_length)
        throw ResourceError("orbit enumeration needs words longer than " +
                            std::to_string(options.max_word_length));
      visit(entry.element, entry.element.matrix().apply(q));
    }
  }
};

}  // namespace ambient_cycles
