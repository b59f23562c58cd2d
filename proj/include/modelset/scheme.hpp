#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modelset/errors.hpp"
#include "modelset/point_set.hpp"
#include "modelset/quadratic.hpp"
#include "modelset/types.hpp"
#include "modelset/window.hpp"

namespace modelset {

enum class ArithmeticMode { Float, QuadraticExact };

/// Dense square matrix over Q(sqrt D), row-major.
struct ExactMatrix {
  int size = 0;
  std::vector<QuadraticNumber> data;

  const QuadraticNumber& at(int r, int c) const { return data[static_cast<std::size_t>(r * size + c)]; }
  QuadraticNumber& at(int r, int c) { return data[static_cast<std::size_t>(r * size + c)]; }
};

/// Square real matrix of size <= 6 with its inverse, row-major.
struct LinearMap {
  int rank = 0;
  std::array<double, kMaxRank * kMaxRank> m{};
  std::array<double, kMaxRank * kMaxRank> inv{};

  double at(int r, int c) const { return m[static_cast<std::size_t>(r * kMaxRank + c)]; }
  double inv_at(int r, int c) const { return inv[static_cast<std::size_t>(r * kMaxRank + c)]; }
};

/// A point of the lattice together with both projections.
struct LatticePoint {
  IndexVec index{};
  Vec physical{};
  Vec star{};

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.index == b.index; }
};

/// Cut-and-project scheme over G = R^d, H = R^m: the lattice is generated by
/// the columns of a (d+m)x(d+m) basis; the first d rows are physical.
class LatticeScheme {
 public:
  /// Throws SingularBasis when |det| <= tol.
  static LatticeScheme make_float(int d, int m, const std::vector<std::vector<double>>& rows,
                                  double tol = 1e-9);
  /// Entries in Q(sqrt radicand); throws SingularBasis when det == 0.
  static LatticeScheme make_exact(int d, int m, const std::vector<std::vector<QuadraticNumber>>& rows,
                                  std::int64_t radicand);

  int physical_dim() const noexcept { return d_; }
  int internal_dim() const noexcept { return m_; }
  int rank() const noexcept { return d_ + m_; }
  ArithmeticMode mode() const noexcept { return mode_; }
  bool is_exact() const noexcept { return mode_ == ArithmeticMode::QuadraticExact; }
  double tol() const noexcept { return tol_; }
  std::int64_t radicand() const noexcept { return radicand_; }

  double basis(int r, int c) const { return map_.at(r, c); }
  double basis_inverse(int r, int c) const { return map_.inv_at(r, c); }
  const LinearMap& map() const noexcept { return map_; }
  /// Dual lattice map B^{-T}.
  const LinearMap& dual_map() const noexcept { return dual_; }
  double determinant() const noexcept { return det_; }
  double covolume() const noexcept { return std::fabs(det_); }
  /// dens(L) = 1 / covolume.
  double lattice_density() const noexcept { return 1.0 / covolume(); }

  Vec physical(const IndexVec& n) const;
  Vec star(const IndexVec& n) const;
  LatticePoint point(const IndexVec& n) const;

  /// Exact counterparts; only valid in QuadraticExact mode.
  const ExactMatrix& exact_basis() const;
  const ExactMatrix& exact_inverse() const;
  ExactVec exact_image(const IndexVec& n) const;
  ExactVec exact_physical(const IndexVec& n) const;
  ExactVec exact_star(const IndexVec& n) const;

  /// Solves basis * c = v.
  std::array<double, kMaxRank> coordinates(const std::array<double, kMaxRank>& v) const;
  ExactVec exact_coordinates(const ExactVec& v) const;
  /// basis * c.
  std::array<double, kMaxRank> apply(const std::array<double, kMaxRank>& c) const;
  ExactVec exact_apply(const ExactVec& c) const;

  friend bool operator==(const LatticeScheme& a, const LatticeScheme& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.map_.m == b.map_.m;
  }

 private:
  LatticeScheme() = default;
  void finish_float();

  int d_ = 1;
  int m_ = 1;
  ArithmeticMode mode_ = ArithmeticMode::Float;
  double tol_ = 1e-9;
  std::int64_t radicand_ = 0;
  LinearMap map_;
  LinearMap dual_;
  double det_ = 0.0;
  ExactMatrix exact_basis_;
  ExactMatrix exact_inverse_;
};

struct DensenessSample {
  std::size_t sample_size = 0;
  double min_gap = 0.0;
};

struct ValidationReport {
  double determinant = 0.0;
  double covolume = 0.0;
  bool invertible = true;
  bool injective = true;
  /// Decided exactly (QuadraticExact) rather than by the bounded scan.
  bool injectivity_exact = false;
  /// Float mode only certifies |n|_inf <= 8; larger witnesses are not excluded.
  bool injectivity_advisory = false;
  std::vector<DensenessSample> denseness;
  std::vector<std::string> warnings;
};

/// Checks injectivity of the physical projection on the lattice and reports
/// a denseness diagnostic for the star images. Throws InjectivityViolation
/// with a witness index.
ValidationReport validate_scheme(const LatticeScheme& scheme);

/// Internal coordinates of basis * index.
Vec star_map(const LatticeScheme& scheme, const IndexVec& index);

/// Exact index of a physical vector of L, decided over Q(sqrt D); nullopt
/// when the vector is not in L. QuadraticExact mode only.
std::optional<IndexVec> locate_in_lattice(const LatticeScheme& scheme, const ExactVec& physical);

struct EnumerateOptions {
  /// Upper bound on the candidate index box volume.
  double budget = 1e8;
};

/// All lattice points with physical part in `region` and star in the window
/// (window boundary policy applies), sorted lexicographically by physical
/// coordinates. Throws RegionTooLarge past the candidate budget.
IndexedPointSet enumerate_cut(const LatticeScheme& scheme, const WindowSpec& window, const Box& region,
                              const EnumerateOptions& options = {});

/// theta_H(W) / covolume.
double model_density(const LatticeScheme& scheme, const WindowSpec& window);

struct DualCandidate {
  Vec k{};
  Vec k_internal{};
  IndexVec dual_index{};
};

/// Physical projections of dual-lattice vectors with |k| <= k_max and
/// |k_internal| <= internal_max (negative: internal_max = k_max), sorted by
/// |k| then lexicographically.
std::vector<DualCandidate> dual_candidates(const LatticeScheme& scheme, double k_max,
                                           double internal_max = -1.0);

/// Visits every integer vector n with map * n inside the closed box
/// [lo, hi] (padded by `pad`). Candidates are supersets; callers filter.
/// Iterates all but the last coordinate and solves the last one as an
/// interval, so the cost is the prefix count plus the output size.
template <class Visit>
void for_each_index_in_box(const LinearMap& map, const std::array<double, kMaxRank>& lo,
                           const std::array<double, kMaxRank>& hi, double budget, Visit&& visit,
                           double pad = 1e-9) {
  const int r = map.rank;
  std::array<std::int64_t, kMaxRank> nlo{};
  std::array<std::int64_t, kMaxRank> nhi{};
  double volume = 1.0;
  for (int j = 0; j < r; ++j) {
    double mn = 0.0;
    double mx = 0.0;
    for (int i = 0; i < r; ++i) {
      double a = map.inv_at(j, i) * lo[i];
      double b = map.inv_at(j, i) * hi[i];
      mn += std::fmin(a, b);
      mx += std::fmax(a, b);
    }
    nlo[j] = static_cast<std::int64_t>(std::floor(mn - 1e-7));
    nhi[j] = static_cast<std::int64_t>(std::ceil(mx + 1e-7));
    volume *= static_cast<double>(nhi[j] - nlo[j] + 1);
  }
  if (volume > budget) {
    throw Error(ErrorCode::RegionTooLarge,
                "candidate index box of " + std::to_string(volume) + " exceeds budget " + std::to_string(budget));
  }
  IndexVec n{};
  for (int j = 0; j < r - 1; ++j) n[j] = nlo[j];
  const int last = r - 1;
  while (true) {
    double tlo = static_cast<double>(nlo[last]);
    double thi = static_cast<double>(nhi[last]);
    bool feasible = true;
    for (int i = 0; i < r && feasible; ++i) {
      double s = 0.0;
      for (int j = 0; j < last; ++j) s += map.at(i, j) * static_cast<double>(n[j]);
      double c = map.at(i, last);
      double a = lo[i] - pad - s;
      double b = hi[i] + pad - s;
      if (std::fabs(c) < 1e-14) {
        feasible = a <= 0.0 && b >= 0.0;
      } else if (c > 0) {
        tlo = std::fmax(tlo, a / c);
        thi = std::fmin(thi, b / c);
      } else {
        tlo = std::fmax(tlo, b / c);
        thi = std::fmin(thi, a / c);
      }
    }
    if (feasible) {
      auto t0 = static_cast<std::int64_t>(std::ceil(tlo - 1e-9));
      auto t1 = static_cast<std::int64_t>(std::floor(thi + 1e-9));
      for (std::int64_t t = t0; t <= t1; ++t) {
        n[last] = t;
        visit(static_cast<const IndexVec&>(n));
      }
      n[last] = 0;
    }
    int j = last - 1;
    while (j >= 0 && n[j] == nhi[j]) {
      n[j] = nlo[j];
      --j;
    }
    if (j < 0) break;
    ++n[j];
  }
}

}  // namespace modelset
