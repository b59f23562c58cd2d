#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/types.hpp"
#include "modelset/window.hpp"

namespace modelset {

/// Coincidence densities eta_n(delta) over a van Hove sequence, for every
/// delta in Delta within distance `radius`. Estimates are symmetrised,
/// eta_n(delta) = (c_n(delta) + c_n(-delta)) / (2 vol A_n), with
/// c_n(delta) = card{x in A_n : x + delta in P}.
struct AutocorrelationTable {
  int dim = 1;
  double radius = 0.0;
  VanHoveSequence boxes;
  std::vector<Vec> deltas;            // sorted lexicographically, closed under negation
  std::vector<IndexVec> delta_index;  // parallel to deltas for scheme-backed input
  std::vector<std::vector<double>> eta;  // [box][delta]
  std::vector<double> eta0;              // [box]
  std::shared_ptr<const LatticeScheme> scheme;

  std::size_t last_box() const { return eta0.size() - 1; }
  std::optional<std::size_t> find(const Translation& delta) const;
  /// eta at the largest box by default; 0 for differences not in the table.
  double eta_at(const Translation& delta, std::optional<std::size_t> box = std::nullopt) const;
  double eta_zero() const { return eta0.back(); }
  /// 2 (eta(0) - eta(delta)).
  double d(const Translation& delta, std::optional<std::size_t> box = std::nullopt) const;
};

/// Requires the region to contain the largest box expanded by R; throws
/// RegionTooSmall otherwise.
AutocorrelationTable eta_table(const IndexedPointSet& p, double r, const VanHoveSequence& boxes);

/// 2 (eta(0) - eta(t - s)): the hull pseudo-metric between s + P and t + P.
double pairwise_d(const AutocorrelationTable& table, const Translation& t, const Translation& s);

struct SymdiffReport {
  std::vector<double> per_box;
  /// Max over the last quarter of the boxes (upper-density proxy).
  double upper = 0.0;
};

/// card((P symmetric-difference Q) in A_n) / vol(A_n). Both regions must
/// contain the largest box (RegionTooSmall).
SymdiffReport symdiff_density(const IndexedPointSet& p, const IndexedPointSet& q, const VanHoveSequence& boxes);

struct AlmostPeriod {
  Translation delta;
  double d = 0.0;
};

struct AlmostPeriods {
  double epsilon = 0.0;
  double radius = 0.0;
  std::vector<AlmostPeriod> members;  // sorted by position
  /// Largest gap between consecutive members in [0, R] (1D; infinite below
  /// two members) or the covering radius estimate on [-R/2, R/2]^d.
  double max_gap = 0.0;
};

/// P_eps: deltas with 2 (eta(0) - eta(delta)) < eps at the largest box.
/// Throws EpsilonOutOfRange unless 0 < eps < 2 eta(0).
AlmostPeriods almost_periods(const AutocorrelationTable& table, double eps);

/// dens(L) theta((t* + W) symmetric-difference W) for t in L.
double predicted_d(const LatticeScheme& scheme, const WindowSpec& window, const IndexVec& t);
/// Exact physical vector; throws NotInL when it is not in L.
double predicted_d(const LatticeScheme& scheme, const WindowSpec& window, const ExactVec& t);

struct MactResult {
  bool close = false;
  Translation v;
  double best_d = 0.0;
  std::size_t candidates = 0;
};

/// Minimises the upper symmetric-difference density of v + P against Q over
/// v = 0 and the differences q - p (|v| <= V) of points near the origin.
MactResult mact_close(const IndexedPointSet& p, const IndexedPointSet& q, double v_radius, double eps,
                      const VanHoveSequence& boxes);

}  // namespace modelset
