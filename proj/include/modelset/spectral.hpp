#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/types.hpp"
#include "modelset/window.hpp"

namespace modelset {

using Complex = std::complex<double>;

/// S_n(k) = vol(A_n)^-1 sum over P in A_n of exp(-2 pi i k.x), one value per
/// box. Partial sums run over fixed blocks of kBlockSize points and are
/// merged in block order, so results do not depend on the thread count.
/// Throws RegionTooSmall when the largest box leaves the region.
std::vector<Complex> weyl_sum(const IndexedPointSet& p, const Vec& k, const VanHoveSequence& boxes);

struct Peak {
  Vec k{};
  std::vector<Complex> amplitude_by_box;
  double intensity = 0.0;  // |S|^2 at the largest box
  bool is_control = false;
};

struct PeakTable {
  std::vector<Peak> entries;   // candidates, sorted by |k|
  std::vector<Peak> controls;  // random frequencies away from candidates
  std::vector<double> sizes;
  /// Largest control |S| at the largest box.
  double max_control = 0.0;
};

/// Amplitudes at the given candidate frequencies plus n_controls seeded
/// control frequencies with |k| uniform in [k_max/4, k_max], each at least
/// 1e-3 away from every candidate.
PeakTable diffraction_table(const IndexedPointSet& p, std::span<const Vec> candidates, double k_max,
                            std::size_t n_controls, std::uint64_t seed, const VanHoveSequence& boxes);

/// Candidates taken from dual_candidates(scheme, k_max, internal_max).
PeakTable diffraction_table(const IndexedPointSet& p, const LatticeScheme& scheme, double k_max,
                            std::size_t n_controls, std::uint64_t seed, const VanHoveSequence& boxes,
                            double internal_max = -1.0);

struct SeparationReport {
  std::size_t samples = 0;
  std::size_t singular = 0;
  double fraction = 0.0;
  bool exact = false;
};

/// Samples torus points uniformly and reports the fraction that hit the
/// window boundary within the physical ball of radius `radius`. Exact
/// schemes with exact windows use rational coordinates p / 1000003 and exact
/// boundary tests; otherwise the window tolerance decides.
SeparationReport separation_fraction(const LatticeScheme& scheme, const WindowSpec& window, std::size_t samples,
                                     std::uint64_t seed, double radius);

}  // namespace modelset
