#include "modelset/autocorr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "modelset/diagnostics.hpp"
#include "modelset/errors.hpp"
#include "modelset/parallel.hpp"

namespace modelset {

namespace {

// Pair counts keyed by difference, one counter per box level.
struct PairCounts {
  std::size_t levels = 0;
  std::unordered_map<IndexVec, std::uint32_t, IndexVecHash> id;
  std::vector<IndexVec> key;
  std::vector<Vec> vec;
  std::vector<std::uint64_t> count;

  std::uint64_t* slot(const IndexVec& k, const Vec& v) {
    auto [it, inserted] = id.try_emplace(k, static_cast<std::uint32_t>(key.size()));
    if (inserted) {
      key.push_back(k);
      vec.push_back(v);
      count.resize(count.size() + levels, 0);
    }
    return &count[it->second * levels];
  }
};

struct Entry {
  Vec vec;
  IndexVec key;
  std::vector<std::uint64_t> count;
};

}  // namespace

std::optional<std::size_t> AutocorrelationTable::find(const Translation& delta) const {
  auto it = std::lower_bound(deltas.begin(), deltas.end(), delta.vec[0] - kMatchTol,
                             [](const Vec& a, double x) { return a[0] < x; });
  const bool by_index = delta.index.has_value() && !delta_index.empty();
  for (; it != deltas.end() && (*it)[0] <= delta.vec[0] + kMatchTol; ++it) {
    auto i = static_cast<std::size_t>(it - deltas.begin());
    if (by_index ? delta_index[i] == *delta.index : max_norm(*it - delta.vec) <= kMatchTol) return i;
  }
  return std::nullopt;
}

double AutocorrelationTable::eta_at(const Translation& delta, std::optional<std::size_t> box) const {
  auto i = find(delta);
  if (!i) return 0.0;
  return eta[box.value_or(last_box())][*i];
}

double AutocorrelationTable::d(const Translation& delta, std::optional<std::size_t> box) const {
  std::size_t b = box.value_or(last_box());
  return 2.0 * (eta0[b] - eta_at(delta, b));
}

AutocorrelationTable eta_table(const IndexedPointSet& p, double r, const VanHoveSequence& boxes) {
  const Box big = boxes.largest();
  if (!p.region.contains(big.expanded(r))) {
    throw Error(ErrorCode::RegionTooSmall, "region must contain the largest box expanded by R");
  }
  const std::size_t levels = boxes.size();
  const bool backed = p.scheme_backed();
  std::vector<std::size_t> level(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) level[i] = boxes.first_containing(p.physical[i]);

  const Box reach = big.expanded(r);
  auto [first, last] = slab(p, reach.lo[0], reach.hi[0]);
  const std::size_t n_outer = last - first;
  std::vector<PairCounts> parts(block_count(n_outer));
  parallel_for_blocks(parts.size(), [&](std::size_t b) {
    PairCounts& acc = parts[b];
    acc.levels = levels;
    std::size_t lo = first + b * kBlockSize;
    std::size_t hi = std::min(last, lo + kBlockSize);
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec& x = p.physical[i];
      if (!reach.contains(x)) continue;
      for (std::size_t j = i + 1; j < p.size() && p.physical[j][0] - x[0] <= r + kMatchTol; ++j) {
        if (level[i] == levels && level[j] == levels) continue;
        Vec d = p.physical[j] - x;
        if (norm(d) > r + kMatchTol) continue;
        std::uint64_t* c = acc.slot(backed ? p.index[j] - p.index[i] : quantize(d), d);
        if (level[i] < levels) ++c[level[i]];
        if (level[j] < levels) ++c[level[j]];
      }
    }
  });

  // Merge blocks in order, then add both signs of every difference.
  std::vector<Entry> entries;
  {
    PairCounts all;
    all.levels = levels;
    for (auto& part : parts) {
      for (std::size_t k = 0; k < part.key.size(); ++k) {
        std::uint64_t* c = all.slot(part.key[k], part.vec[k]);
        for (std::size_t l = 0; l < levels; ++l) c[l] += part.count[k * levels + l];
      }
      part = PairCounts{};
    }
    entries.reserve(2 * all.key.size() + 1);
    for (std::size_t k = 0; k < all.key.size(); ++k) {
      std::vector<std::uint64_t> c(all.count.begin() + static_cast<std::ptrdiff_t>(k * levels),
                                   all.count.begin() + static_cast<std::ptrdiff_t>((k + 1) * levels));
      entries.push_back({all.vec[k], all.key[k], c});
      entries.push_back({-all.vec[k], -all.key[k], std::move(c)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.vec < b.vec; });
  std::vector<Entry> merged;
  for (auto& e : entries) {
    Entry* into = nullptr;
    for (auto it = merged.rbegin(); it != merged.rend() && e.vec[0] - it->vec[0] <= kMatchTol; ++it) {
      if (backed ? it->key == e.key : max_norm(it->vec - e.vec) <= kMatchTol) {
        into = &*it;
        break;
      }
    }
    if (into == nullptr) {
      merged.push_back(std::move(e));
    } else {
      for (std::size_t l = 0; l < levels; ++l) into->count[l] += e.count[l];
    }
  }

  AutocorrelationTable tab;
  tab.dim = p.dim;
  tab.radius = r;
  tab.boxes = boxes;
  tab.scheme = backed ? p.scheme : nullptr;
  std::vector<std::uint64_t> points_at(levels, 0);
  for (auto l : level) {
    if (l < levels) ++points_at[l];
  }
  Entry zero{Vec{}, IndexVec{}, std::vector<std::uint64_t>(levels, 0)};
  for (std::size_t l = 0; l < levels; ++l) zero.count[l] = 2 * points_at[l];
  auto pos = std::lower_bound(merged.begin(), merged.end(), zero.vec,
                              [](const Entry& a, const Vec& v) { return a.vec < v; });
  merged.insert(pos, std::move(zero));

  tab.eta.assign(levels, std::vector<double>(merged.size(), 0.0));
  tab.eta0.assign(levels, 0.0);
  for (const auto& e : merged) {
    tab.deltas.push_back(e.vec);
    if (backed) tab.delta_index.push_back(e.key);
  }
  for (std::size_t k = 0; k < merged.size(); ++k) {
    std::uint64_t run = 0;
    for (std::size_t l = 0; l < levels; ++l) {
      run += merged[k].count[l];
      tab.eta[l][k] = static_cast<double>(run) / (2.0 * boxes.box(l).volume());
    }
  }
  std::uint64_t run = 0;
  for (std::size_t l = 0; l < levels; ++l) {
    run += points_at[l];
    tab.eta0[l] = static_cast<double>(run) / boxes.box(l).volume();
  }
  return tab;
}

double pairwise_d(const AutocorrelationTable& table, const Translation& t, const Translation& s) {
  Translation diff{t.vec - s.vec, std::nullopt};
  if (t.index && s.index) diff.index = *t.index - *s.index;
  return table.d(diff);
}

SymdiffReport symdiff_density(const IndexedPointSet& p, const IndexedPointSet& q, const VanHoveSequence& boxes) {
  const Box big = boxes.largest();
  if (!p.region.contains(big) || !q.region.contains(big)) {
    throw Error(ErrorCode::RegionTooSmall, "both regions must contain the largest box");
  }
  const bool by_index = index_compatible(p, q);
  std::vector<double> missing(boxes.size(), 0.0);
  auto tally = [&](const IndexedPointSet& from, const IndexedPointSet& to) {
    PointLookup look(to);
    auto [a, b] = slab(from, big.lo[0], big.hi[0]);
    for (std::size_t i = a; i < b; ++i) {
      std::size_t l = boxes.first_containing(from.physical[i]);
      if (l == boxes.size()) continue;
      auto hit = by_index ? look.find_index(from.index[i]) : look.find_near(from.physical[i]);
      if (!hit) missing[l] += 1.0;
    }
  };
  tally(p, q);
  tally(q, p);
  SymdiffReport rep;
  double run = 0.0;
  for (std::size_t l = 0; l < boxes.size(); ++l) {
    run += missing[l];
    rep.per_box.push_back(run / boxes.box(l).volume());
  }
  std::size_t tail = (boxes.size() + 3) / 4;
  rep.upper = *std::max_element(rep.per_box.end() - static_cast<std::ptrdiff_t>(tail), rep.per_box.end());
  return rep;
}

AlmostPeriods almost_periods(const AutocorrelationTable& table, double eps) {
  const double scale = 2.0 * table.eta_zero();
  if (!(eps > 0.0) || !(eps < scale)) {
    throw Error(ErrorCode::EpsilonOutOfRange, "need 0 < eps < 2 eta(0) = " + std::to_string(scale));
  }
  AlmostPeriods out;
  out.epsilon = eps;
  out.radius = table.radius;
  const std::size_t b = table.last_box();
  for (std::size_t k = 0; k < table.deltas.size(); ++k) {
    double d = 2.0 * (table.eta0[b] - table.eta[b][k]);
    if (d < eps) {
      Translation t{table.deltas[k], std::nullopt};
      if (!table.delta_index.empty()) t.index = table.delta_index[k];
      out.members.push_back({t, d});
    }
  }
  if (table.dim == 1) {
    std::vector<double> xs;
    for (const auto& m : out.members) {
      if (m.delta.vec[0] >= -kMatchTol && m.delta.vec[0] <= table.radius + kMatchTol) xs.push_back(m.delta.vec[0]);
    }
    out.max_gap = max_gap_1d(xs);
  } else {
    std::vector<Vec> pts;
    for (const auto& m : out.members) pts.push_back(m.delta.vec);
    out.max_gap = covering_radius(pts, Box::cube(table.dim, -table.radius / 2.0, table.radius / 2.0));
  }
  return out;
}

double predicted_d(const LatticeScheme& scheme, const WindowSpec& window, const IndexVec& t) {
  if (scheme.internal_dim() == 0) return 0.0;
  WindowSpec shifted = scheme.is_exact() && window.is_exact() ? window.translated(scheme.exact_star(t))
                                                              : window.translated(scheme.star(t));
  return scheme.lattice_density() * symmetric_difference_measure(shifted, window);
}

double predicted_d(const LatticeScheme& scheme, const WindowSpec& window, const ExactVec& t) {
  auto n = locate_in_lattice(scheme, t);
  if (!n) throw Error(ErrorCode::NotInL, "translation is not in L");
  return predicted_d(scheme, window, *n);
}

MactResult mact_close(const IndexedPointSet& p, const IndexedPointSet& q, double v_radius, double eps,
                      const VanHoveSequence& boxes) {
  MactResult res;
  const bool backed = index_compatible(p, q);
  std::vector<Translation> cands{{Vec{}, std::nullopt}};
  if (backed) cands.front().index = IndexVec{};
  // A handful of base points nearest the origin, so that one of them is
  // very likely outside the disagreement set.
  std::vector<std::size_t> base;
  {
    auto [a, b] = slab(p, -4.0 * v_radius - 8.0, 4.0 * v_radius + 8.0);
    for (std::size_t i = a; i < b; ++i) base.push_back(i);
    std::sort(base.begin(), base.end(), [&](std::size_t x, std::size_t y) {
      return norm(p.physical[x]) < norm(p.physical[y]);
    });
    if (base.size() > 8) base.resize(8);
  }
  for (std::size_t i : base) {
    auto [a, b] = slab(q, p.physical[i][0] - v_radius, p.physical[i][0] + v_radius);
    for (std::size_t j = a; j < b; ++j) {
      Translation t{q.physical[j] - p.physical[i], std::nullopt};
      if (norm(t.vec) > v_radius + kMatchTol) continue;
      if (backed) t.index = q.index[j] - p.index[i];
      cands.push_back(t);
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Translation& a, const Translation& b) {
    double na = norm(a.vec);
    double nb = norm(b.vec);
    return std::fabs(na - nb) > 1e-12 ? na < nb : a.vec < b.vec;
  });
  res.best_d = INFINITY;
  Vec prev{INFINITY, INFINITY, INFINITY};
  for (const auto& t : cands) {
    if (max_norm(t.vec - prev) <= kMatchTol) continue;
    prev = t.vec;
    ++res.candidates;
    double d = symdiff_density(translate(p, t), q, boxes).upper;
    if (d < res.best_d) {
      res.best_d = d;
      res.v = t;
    }
  }
  res.close = res.best_d <= eps;
  return res;
}

}  // namespace modelset
