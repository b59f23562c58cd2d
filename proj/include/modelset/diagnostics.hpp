#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modelset/point_set.hpp"
#include "modelset/types.hpp"

// Patch-level diagnostics on finite point sets: discreteness, local
// complexity, repetition, frequencies, periods and local closeness.
namespace modelset {

/// Delta intersected with the closed ball B_r, from anchors at least r inside
/// the region. The result is closed under negation and sorted; scheme-backed
/// inputs give scheme-backed differences (offset 0). Throws RegionTooSmall.
IndexedPointSet difference_set(const IndexedPointSet& p, double r);

/// Half the minimum pairwise distance. Throws Undefined below two points.
double packing_radius(const IndexedPointSet& p);

/// Largest consecutive gap of a sorted 1D sample, or infinity below two points.
double max_gap_1d(std::span<const double> sorted);

/// Covering radius of `points` relative to `box`, estimated on a regular grid
/// of grid^dim probes (exact gaps / 2 in one dimension, edges excluded).
double covering_radius(const std::vector<Vec>& points, const Box& box, int grid = 32);

struct Cluster {
  std::vector<Vec> points;  // relative to the anchor, sorted
  std::size_t multiplicity = 0;
};

struct ClusterReport {
  double radius = 0.0;
  std::size_t anchors = 0;
  std::vector<Cluster> clusters;  // by decreasing multiplicity
};

/// Distinct clusters (P - x) in closed B_K for anchors x at least K inside
/// the region. Scheme-backed sets compare clusters by index; raw sets by
/// coordinates quantized at kMatchTol.
ClusterReport flc_clusters(const IndexedPointSet& p, double k);

struct RepetitionReport {
  std::vector<Translation> matches;
  std::size_t reference_size = 0;
  /// Largest gap between matches (1D) or estimated covering radius (dD).
  double max_gap = 0.0;
};

/// Translations t with (P - t) and P agreeing on the box center + [-K, K]^d,
/// among candidates whose translated box lies inside the region.
RepetitionReport repetition_set(const IndexedPointSet& p, double k, const Vec& center = {});

struct FrequencyTable {
  std::vector<double> sizes;
  std::vector<Vec> anchors;
  std::vector<std::vector<double>> frequency;  // [anchor][box]
  /// (max - min) / mean over anchors at the largest box.
  double spread = 0.0;
  /// Set when some averaging box pokes out of the region.
  bool truncated = false;
};

/// card{t : t + patch inside P and inside a + B_n} / vol(B_n) for every
/// anchor a and box B_n. Patch offsets may carry lattice indices.
FrequencyTable patch_frequency(const IndexedPointSet& p, std::span<const Translation> patch,
                               const VanHoveSequence& boxes, std::span<const Vec> anchors);

struct PeriodReport {
  std::vector<Translation> periods;     // sorted by norm
  std::vector<Translation> generators;  // shortest independent positive periods
  bool full_rank = false;
  double range = 0.0;
};

/// Translations t in Delta with |t| <= range such that t + P and P agree on
/// the region shrunk by |t|_inf. A negative range means half the inradius.
PeriodReport period_candidates(const IndexedPointSet& p, double range = -1.0);

struct LocalMatch {
  bool close = false;
  Translation v;
  std::size_t candidates = 0;
};

/// Searches v with |v| <= V and (v + P) equal to Q on [-K, K]^d. Candidates
/// are all differences q - p of points near the box, so the search is
/// complete; the shortest matching v is returned.
LocalMatch lt_close(const IndexedPointSet& p, const IndexedPointSet& q, double k, double v_radius);

/// True when every point of `a` lies in `b` and vice versa on the box.
bool agree_on(const IndexedPointSet& a, const IndexedPointSet& b, const Box& box);

}  // namespace modelset
