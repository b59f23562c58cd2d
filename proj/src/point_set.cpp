#include "modelset/point_set.hpp"

#include <algorithm>
#include <numeric>

#include "modelset/errors.hpp"
#include "modelset/scheme.hpp"

namespace modelset {

void IndexedPointSet::sort() {
  std::vector<std::size_t> order(physical.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return physical[a] < physical[b]; });
  auto permute = [&](auto& v) {
    if (v.size() != order.size()) return;
    std::remove_reference_t<decltype(v)> out;
    out.reserve(v.size());
    for (auto i : order) out.push_back(v[i]);
    v = std::move(out);
  };
  permute(physical);
  permute(index);
  permute(star);
}

IndexedPointSet IndexedPointSet::raw(int dim, const Box& region, std::vector<Vec> points) {
  IndexedPointSet p;
  p.dim = dim;
  p.region = region;
  p.physical = std::move(points);
  p.sort();
  for (std::size_t i = 1; i < p.size(); ++i) {
    // Duplicates within tolerance need not be adjacent in lexicographic order
    // for d > 1, so scan the slab of equal first coordinates.
    for (std::size_t j = i; j-- > 0;) {
      if (p.physical[i][0] - p.physical[j][0] > kMatchTol) break;
      if (max_norm(p.physical[i] - p.physical[j]) <= kMatchTol) {
        throw Error(ErrorCode::DuplicatePoint, "duplicate point at position " + std::to_string(i));
      }
    }
  }
  return p;
}

IndexedPointSet translate(const IndexedPointSet& p, const Translation& t) {
  IndexedPointSet q = p;
  q.region = p.region.translated(t.vec);
  for (auto& x : q.physical) x = x + t.vec;
  if (q.scheme_backed()) {
    if (t.index) {
      Vec tstar = q.scheme->star(*t.index);
      for (auto& n : q.index) n = n + *t.index;
      for (auto& s : q.star) s = s + tstar;
    } else {
      q.offset = q.offset + t.vec;
    }
  }
  return q;
}

IndexedPointSet reflect(const IndexedPointSet& p) {
  IndexedPointSet q = p;
  for (int i = 0; i < p.dim; ++i) {
    q.region.lo[i] = -p.region.hi[i];
    q.region.hi[i] = -p.region.lo[i];
  }
  for (auto& x : q.physical) x = -x;
  for (auto& n : q.index) n = -n;
  for (auto& s : q.star) s = -s;
  q.offset = -p.offset;
  q.sort();
  return q;
}

IndexedPointSet restrict_to(const IndexedPointSet& p, const Box& box) {
  IndexedPointSet q;
  q.dim = p.dim;
  q.region = intersect(p.region, box);
  q.scheme = p.scheme;
  q.offset = p.offset;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!box.contains(p.physical[i])) continue;
    q.physical.push_back(p.physical[i]);
    if (p.scheme_backed()) {
      q.index.push_back(p.index[i]);
      if (!p.star.empty()) q.star.push_back(p.star[i]);
    }
  }
  return q;
}

bool index_compatible(const IndexedPointSet& a, const IndexedPointSet& b) {
  if (!a.scheme_backed() || !b.scheme_backed()) return false;
  if (a.offset != b.offset) return false;
  return a.scheme == b.scheme || *a.scheme == *b.scheme;
}

IndexVec quantize(const Vec& v, double step) {
  IndexVec q{};
  for (int i = 0; i < kMaxDim; ++i) q[i] = std::llround(v[i] / step);
  return q;
}

PointLookup::PointLookup(const IndexedPointSet& set) : set_(&set) {
  if (set.scheme_backed()) {
    by_index_.reserve(set.size() * 2);
    for (std::size_t i = 0; i < set.size(); ++i) by_index_.emplace(set.index[i], i);
  }
}

std::optional<std::size_t> PointLookup::find_index(const IndexVec& index) const {
  auto it = by_index_.find(index);
  if (it == by_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PointLookup::find_near(const Vec& p) const {
  const auto& pts = set_->physical;
  auto it = std::lower_bound(pts.begin(), pts.end(), p[0] - kMatchTol,
                             [](const Vec& a, double x) { return a[0] < x; });
  for (; it != pts.end() && (*it)[0] <= p[0] + kMatchTol; ++it) {
    if (max_norm(*it - p) <= kMatchTol) return static_cast<std::size_t>(it - pts.begin());
  }
  return std::nullopt;
}

std::optional<std::size_t> PointLookup::find(const Vec& p, const std::optional<IndexVec>& index) const {
  if (index && set_->scheme_backed()) return find_index(*index);
  return find_near(p);
}

std::pair<std::size_t, std::size_t> slab(const IndexedPointSet& set, double x0, double x1) {
  const auto& pts = set.physical;
  auto a = std::lower_bound(pts.begin(), pts.end(), x0, [](const Vec& v, double x) { return v[0] < x; });
  auto b = std::upper_bound(a, pts.end(), x1, [](double x, const Vec& v) { return x < v[0]; });
  return {static_cast<std::size_t>(a - pts.begin()), static_cast<std::size_t>(b - pts.begin())};
}

std::vector<std::size_t> neighbours_within(const IndexedPointSet& set, const Vec& p, double r) {
  std::vector<std::size_t> out;
  auto [a, b] = slab(set, p[0] - r - kMatchTol, p[0] + r + kMatchTol);
  for (std::size_t i = a; i < b; ++i) {
    if (norm(set.physical[i] - p) <= r + kMatchTol) out.push_back(i);
  }
  return out;
}

}  // namespace modelset
