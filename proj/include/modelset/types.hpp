#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace modelset {

/// Physical and internal dimensions are each at most 3.
inline constexpr int kMaxDim = 3;
inline constexpr int kMaxRank = 2 * kMaxDim;

/// Coordinates in R^d or R^m; unused trailing slots stay zero so that
/// lexicographic comparison and hashing ignore the dimension.
using Vec = std::array<double, kMaxDim>;
/// Integer coordinates with respect to the lattice basis.
using IndexVec = std::array<std::int64_t, kMaxRank>;

inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator-(const Vec& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline double max_norm(const Vec& a) {
  return std::fmax(std::fabs(a[0]), std::fmax(std::fabs(a[1]), std::fabs(a[2])));
}

inline IndexVec operator+(const IndexVec& a, const IndexVec& b) {
  IndexVec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
  return r;
}
inline IndexVec operator-(const IndexVec& a, const IndexVec& b) {
  IndexVec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] - b[i];
  return r;
}
inline IndexVec operator-(const IndexVec& a) {
  IndexVec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = -a[i];
  return r;
}
inline std::int64_t l1_norm(const IndexVec& a) {
  std::int64_t s = 0;
  for (auto v : a) s += v < 0 ? -v : v;
  return s;
}
inline bool is_zero(const IndexVec& a) {
  for (auto v : a) {
    if (v != 0) return false;
  }
  return true;
}

struct IndexVecHash {
  std::size_t operator()(const IndexVec& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

/// Closed axis-aligned box in R^dim.
struct Box {
  int dim = 1;
  Vec lo{};
  Vec hi{};

  static Box cube(int dim, double lo, double hi) {
    Box b{dim, {}, {}};
    for (int i = 0; i < dim; ++i) {
      b.lo[i] = lo;
      b.hi[i] = hi;
    }
    return b;
  }

  bool contains(const Vec& p) const {
    for (int i = 0; i < dim; ++i) {
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    }
    return true;
  }
  bool contains(const Box& other) const {
    for (int i = 0; i < dim; ++i) {
      if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
    }
    return true;
  }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
    return v;
  }
  bool empty() const {
    for (int i = 0; i < dim; ++i) {
      if (hi[i] < lo[i]) return true;
    }
    return false;
  }
  /// Shrinks (r > 0) or grows (r < 0) every face by r.
  Box shrunk(double r) const {
    Box b = *this;
    for (int i = 0; i < dim; ++i) {
      b.lo[i] += r;
      b.hi[i] -= r;
    }
    return b;
  }
  Box expanded(double r) const { return shrunk(-r); }
  Box translated(const Vec& t) const {
    Box b = *this;
    for (int i = 0; i < dim; ++i) {
      b.lo[i] += t[i];
      b.hi[i] += t[i];
    }
    return b;
  }
  /// Smallest half-width over the axes.
  double inradius() const {
    double r = INFINITY;
    for (int i = 0; i < dim; ++i) r = std::fmin(r, 0.5 * (hi[i] - lo[i]));
    return r;
  }
};

inline Box intersect(const Box& a, const Box& b) {
  Box r = a;
  for (int i = 0; i < a.dim; ++i) {
    r.lo[i] = std::fmax(a.lo[i], b.lo[i]);
    r.hi[i] = std::fmin(a.hi[i], b.hi[i]);
  }
  return r;
}

/// Nested averaging boxes: either centred a + [-n, n]^d or anchored
/// a + [0, n]^d, for the listed n in increasing order.
struct VanHoveSequence {
  int dim = 1;
  std::vector<double> sizes;
  bool centered = true;
  Vec anchor{};

  Box box(std::size_t i) const {
    double n = sizes.at(i);
    Box b = centered ? Box::cube(dim, -n, n) : Box::cube(dim, 0.0, n);
    return b.translated(anchor);
  }
  Box largest() const { return box(sizes.size() - 1); }
  std::size_t size() const { return sizes.size(); }
  VanHoveSequence at_anchor(const Vec& a) const {
    VanHoveSequence s = *this;
    s.anchor = a;
    return s;
  }
  /// Index of the smallest box containing p, or size() if none does.
  std::size_t first_containing(const Vec& p) const {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (box(i).contains(p)) return i;
    }
    return sizes.size();
  }

  static VanHoveSequence default_1d() { return {1, {125, 250, 500, 1000, 2000, 4000}, true, {}}; }
};

/// A translation in physical space, optionally carrying its lattice index
/// (which makes membership tests against scheme-backed sets exact).
struct Translation {
  Vec vec{};
  std::optional<IndexVec> index;
};

}  // namespace modelset
