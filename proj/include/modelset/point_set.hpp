#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "modelset/types.hpp"

namespace modelset {

class LatticeScheme;

/// Matching tolerance for raw (non scheme-backed) coordinates.
inline constexpr double kMatchTol = 1e-7;

/// Finite patch of a point set, exhaustive on `region`. Scheme-backed sets
/// carry the lattice index of every point; their physical coordinates are
/// offset + (physical part of basis * index). Points are sorted
/// lexicographically by physical coordinates.
struct IndexedPointSet {
  int dim = 1;
  Box region;
  std::vector<Vec> physical;
  std::vector<IndexVec> index;
  std::vector<Vec> star;
  std::shared_ptr<const LatticeScheme> scheme;
  Vec offset{};

  std::size_t size() const noexcept { return physical.size(); }
  bool empty() const noexcept { return physical.empty(); }
  bool scheme_backed() const noexcept { return scheme != nullptr && index.size() == physical.size(); }

  /// Sorts the parallel arrays by physical coordinates.
  void sort();

  /// Raw point set (ingested data); sorts the input. Throws DuplicatePoint
  /// when two points coincide within kMatchTol.
  static IndexedPointSet raw(int dim, const Box& region, std::vector<Vec> points);
};

/// t + P. The index travels along when both are available.
IndexedPointSet translate(const IndexedPointSet& p, const Translation& t);
/// -P.
IndexedPointSet reflect(const IndexedPointSet& p);
/// Points of P inside the box; the region becomes the intersection.
IndexedPointSet restrict_to(const IndexedPointSet& p, const Box& box);

/// True when membership between the two sets can be decided on indices.
bool index_compatible(const IndexedPointSet& a, const IndexedPointSet& b);

/// Coordinates rounded to a kMatchTol grid, used as hash keys for raw data.
IndexVec quantize(const Vec& v, double step = kMatchTol);

/// Membership queries against a point set: exact on indices for
/// scheme-backed sets, sorted-array search within kMatchTol otherwise.
class PointLookup {
 public:
  explicit PointLookup(const IndexedPointSet& set);

  /// Position of the point with this index (scheme-backed sets only).
  std::optional<std::size_t> find_index(const IndexVec& index) const;
  /// Position of a point within kMatchTol of p.
  std::optional<std::size_t> find_near(const Vec& p) const;
  /// Uses the index when the query carries one and the set is scheme-backed.
  std::optional<std::size_t> find(const Vec& p, const std::optional<IndexVec>& index) const;

 private:
  const IndexedPointSet* set_;
  std::unordered_map<IndexVec, std::size_t, IndexVecHash> by_index_;
};

/// Positions of all points within Euclidean distance r of p (inclusive).
/// `set` must be sorted.
std::vector<std::size_t> neighbours_within(const IndexedPointSet& set, const Vec& p, double r);

/// Positions [first, last) of the points whose first coordinate lies in
/// [x0, x1]; relies on the lexicographic sort.
std::pair<std::size_t, std::size_t> slab(const IndexedPointSet& set, double x0, double x1);

}  // namespace modelset
