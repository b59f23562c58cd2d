#pragma once

#include <optional>
#include <span>
#include <vector>

#include "modelset/autocorr.hpp"
#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/types.hpp"
#include "modelset/window.hpp"

namespace modelset {

/// Element of (R^d x R^m) / L as fractional coordinates in [0, 1)^(d+m)
/// with respect to the scheme basis. Exact coordinates are kept when the
/// point was built from exact data.
struct TorusPoint {
  std::vector<double> frac;
  std::optional<ExactVec> exact;

  std::size_t rank() const { return frac.size(); }
};

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
TorusPoint operator-(const TorusPoint& a);
bool operator==(const TorusPoint& a, const TorusPoint& b);

/// Reduces coordinates mod 1.
TorusPoint torus_point(std::vector<double> coords);
TorusPoint torus_point(const ExactVec& coords);

/// The image of t under R^d -> T.
TorusPoint embed_translation(const LatticeScheme& scheme, const Vec& t);
TorusPoint embed_translation(const LatticeScheme& scheme, const ExactVec& t);

/// (x, h) + L.
TorusPoint beta_of_cut(const LatticeScheme& scheme, const Vec& x, const Vec& h);
TorusPoint beta_of_cut(const LatticeScheme& scheme, const ExactVec& x, const ExactVec& h);

/// The representative basis * frac, split into physical and internal parts.
std::pair<Vec, Vec> representative(const LatticeScheme& scheme, const TorusPoint& p);
std::pair<ExactVec, ExactVec> exact_representative(const LatticeScheme& scheme, const TorusPoint& p);

/// Minimum Euclidean length over the 3^(d+m) nearest representatives of a - b.
double torus_distance(const LatticeScheme& scheme, const TorusPoint& a, const TorusPoint& b);

struct BoundaryHit {
  IndexVec index{};
  Vec physical{};  // x + y
  Vec star{};      // h + y*, on the window boundary
};

/// Lattice points y with x + y in [-R, R]^d and h + y* on the boundary of W,
/// where (x, h) represents p. Exact when both scheme and window are exact
/// and p carries exact coordinates; otherwise within the window tolerance.
std::vector<BoundaryHit> singularity_test(const LatticeScheme& scheme, const WindowSpec& window,
                                          const TorusPoint& p, double radius);

struct FiberReport {
  std::vector<IndexedPointSet> elements;
  std::vector<BoundaryHit> hits;
  /// Hits on more than one boundary point: the two one-sided limits are
  /// reported but other intermediate sets are not enumerated.
  bool multiple_boundary_points = false;
};

/// Hull elements over p restricted to [-R, R]^d: the closed cut when p is
/// non-singular, else the two one-sided limits h -> h +- 0. Needs m = 1 and
/// an interval window (UnsupportedDimension otherwise).
FiberReport fiber_enumerate(const std::shared_ptr<const LatticeScheme>& scheme, const WindowSpec& window,
                            const TorusPoint& p, double radius);

struct ReconstructionReport {
  std::optional<WindowSpec> estimate;
  bool insufficient_data = false;
  double threshold = 0.0;
  std::size_t components = 0;
  std::optional<double> hausdorff;
};

/// Window estimate from the closure of the star images: interval hull
/// split at gaps above `threshold` (m = 1; default 5x the largest
/// nearest-neighbour gap), or the convex hull (m = 2, convex windows).
/// Throws NotSchemeBacked for raw sets.
ReconstructionReport reconstruct_window(const IndexedPointSet& p, const WindowSpec* truth = nullptr,
                                        double threshold = -1.0);

struct ContinuityRow {
  double m = 0.0;
  double epsilon = 0.0;
  /// No difference in the table failed; epsilon was capped at 2 eta(0).
  bool capped = false;
  /// Nonzero differences with d < epsilon (all of which passed).
  std::size_t members = 0;
};

/// For each M, the largest eps such that every table difference t with
/// d(t) < eps satisfies (t + P) = P on [-M, M]^d: the d-value of the first
/// failing difference in increasing d order. The region must contain
/// [-M, M]^d expanded by the table radius (RegionTooSmall).
std::vector<ContinuityRow> continuity_epsilon(const IndexedPointSet& p, const AutocorrelationTable& table,
                                              std::span<const double> ms);

}  // namespace modelset
