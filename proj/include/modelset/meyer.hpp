#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/types.hpp"

namespace modelset {

/// Minimal l1 coefficient norm with respect to the physical projections of
/// the basis columns; by injectivity this is the l1 norm of the index.
std::int64_t generator_norm(const IndexVec& index);
/// Throws NotInL when x is not the physical part of a lattice vector.
std::int64_t generator_norm(const LatticeScheme& scheme, const ExactVec& x);

struct M1Report {
  std::vector<Translation> cover;  // F at radius R
  std::size_t card_r = 0;
  std::size_t card_2r = 0;
  bool stable = false;
};

/// Greedy cover of Delta in B_R by P + F: each difference is paired with its
/// nearest point of P. Reports card(F) at R and 2R. P should contain 0 and
/// extend past B_{2R} (RegionTooSmall from the difference set otherwise).
M1Report m1_cover(const IndexedPointSet& p, double r);

struct WeakUdReport {
  std::vector<std::size_t> counts;  // per anchor
  std::size_t max = 0;
  std::size_t min = 0;
};

/// card(Delta in a + K) for every anchor a, with K = [-k, k]^d. Delta is
/// taken from the difference set within the radius reaching all anchors.
WeakUdReport weak_ud_bound(const IndexedPointSet& p, double k, std::span<const Vec> anchors);

struct ChainStep {
  Vec x{};  // x_i
  Translation p;
  Translation q;
};

struct MeyerConstants {
  double half_width = 0.0;  // K = [-r, r]^d
  std::int64_t m = 0;       // max generator norm over Delta in 3K
  std::size_t big_m = 0;    // max card((u + 2K) in Delta) over samples
  double reach = 0.0;       // differences known up to this radius
  std::size_t anchors = 0;
  IndexedPointSet deltas;   // Delta within `reach`
};

/// Constants for the certificates: r = 1.1 x the covering radius of P on its
/// core unless given, m from the differences in 3K, M over `n_anchors`
/// seeded anchors in [-reach/2, reach/2]^d.
MeyerConstants meyer_constants(const IndexedPointSet& p, double reach, std::size_t n_anchors, std::uint64_t seed,
                               double half_width = -1.0);

struct MeyerCertificate {
  Translation x;
  Translation y;
  std::vector<ChainStep> chain;
  std::int64_t m = 0;
  std::size_t big_m = 0;
  std::int64_t f_bound = 0;   // 2 m M
  Translation f;              // (y - x) - q_l
  std::int64_t f_norm = 0;
  std::size_t distinct_differences = 0;  // card{q_i - p_i}
  bool valid = false;
};

/// Builds the stepping-stone chain from x to 0 and its parallel from y,
/// choosing p_i, q_i as the nearest points of P, and checks every bound with
/// index arithmetic. Needs a scheme-backed P containing 0. Throws
/// ChainFailure with the step index when a chain point has no partner in K.
MeyerCertificate stepping_certificate(const IndexedPointSet& p, const IndexVec& x, const IndexVec& y,
                                      const MeyerConstants& constants);

}  // namespace modelset
