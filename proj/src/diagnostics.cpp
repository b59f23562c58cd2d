#include "modelset/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "modelset/errors.hpp"
#include "modelset/scheme.hpp"

namespace modelset {

namespace {

template <class Fn>
void for_each_neighbour(const IndexedPointSet& set, const Vec& x, double r, Fn&& fn) {
  auto [a, b] = slab(set, x[0] - r - kMatchTol, x[0] + r + kMatchTol);
  for (std::size_t j = a; j < b; ++j) {
    if (norm(set.physical[j] - x) <= r + kMatchTol) fn(j);
  }
}

// Sorted, with near-duplicates (within kMatchTol) removed.
std::vector<Vec> dedupe_sorted(std::vector<Vec> v) {
  std::sort(v.begin(), v.end());
  std::vector<Vec> out;
  for (const auto& x : v) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && x[0] - (*it)[0] <= kMatchTol; ++it) {
      if (max_norm(x - *it) <= kMatchTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(x);
  }
  return out;
}

bool positive(const Vec& v) {
  for (double c : v) {
    if (std::fabs(c) > kMatchTol) return c > 0;
  }
  return false;
}

bool lex_by_norm(const Translation& a, const Translation& b) {
  double na = norm(a.vec);
  double nb = norm(b.vec);
  if (std::fabs(na - nb) > 1e-12) return na < nb;
  return a.vec < b.vec;
}

Translation delta_at(const IndexedPointSet& d, std::size_t i) {
  Translation t{d.physical[i], std::nullopt};
  if (d.scheme_backed()) t.index = d.index[i];
  return t;
}

}  // namespace

IndexedPointSet difference_set(const IndexedPointSet& p, double r) {
  Box core = p.region.shrunk(r);
  if (core.empty()) throw Error(ErrorCode::RegionTooSmall, "region has no points at distance r from its boundary");
  IndexedPointSet out;
  out.dim = p.dim;
  out.region = Box::cube(p.dim, -r, r);
  if (p.scheme_backed()) {
    out.scheme = p.scheme;
    std::unordered_set<IndexVec, IndexVecHash> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!core.contains(p.physical[i])) continue;
      for_each_neighbour(p, p.physical[i], r, [&](std::size_t j) {
        IndexVec n = p.index[j] - p.index[i];
        seen.insert(n);
        seen.insert(-n);
      });
    }
    for (const auto& n : seen) {
      out.index.push_back(n);
      out.physical.push_back(p.scheme->physical(n));
      out.star.push_back(p.scheme->star(n));
    }
    out.sort();
    return out;
  }
  std::vector<Vec> ds;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!core.contains(p.physical[i])) continue;
    for_each_neighbour(p, p.physical[i], r, [&](std::size_t j) {
      Vec d = p.physical[j] - p.physical[i];
      ds.push_back(d);
      ds.push_back(-d);
    });
  }
  out.physical = dedupe_sorted(std::move(ds));
  return out;
}

double packing_radius(const IndexedPointSet& p) {
  if (p.size() < 2) throw Error(ErrorCode::Undefined, "packing radius needs at least two points");
  double best = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size() && p.physical[j][0] - p.physical[i][0] < best; ++j) {
      best = std::min(best, norm(p.physical[j] - p.physical[i]));
    }
  }
  return best / 2.0;
}

double max_gap_1d(std::span<const double> sorted) {
  if (sorted.size() < 2) return INFINITY;
  double g = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) g = std::max(g, sorted[i] - sorted[i - 1]);
  return g;
}

double covering_radius(const std::vector<Vec>& points, const Box& box, int grid) {
  std::vector<Vec> pts;
  for (const auto& x : points) {
    if (box.expanded(kMatchTol).contains(x)) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  if (pts.empty()) return INFINITY;
  if (box.dim == 1) {
    std::vector<double> xs;
    for (const auto& x : pts) xs.push_back(x[0]);
    return xs.size() < 2 ? INFINITY : max_gap_1d(xs) / 2.0;
  }
  double worst = 0.0;
  IndexedPointSet tmp;
  tmp.dim = box.dim;
  tmp.physical = pts;
  std::array<int, kMaxDim> g{};
  while (true) {
    Vec probe{};
    for (int i = 0; i < box.dim; ++i) {
      probe[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (g[i] + 0.5) / grid;
    }
    double best = INFINITY;
    // Grow the search slab until the nearest point is certified.
    for (double r = 1.0;; r *= 2.0) {
      for_each_neighbour(tmp, probe, r, [&](std::size_t j) { best = std::min(best, norm(pts[j] - probe)); });
      if (best <= r || r > 4.0 * norm(box.hi - box.lo)) break;
    }
    worst = std::max(worst, best);
    int i = 0;
    while (i < box.dim && ++g[i] == grid) g[i++] = 0;
    if (i == box.dim) break;
  }
  return worst;
}

ClusterReport flc_clusters(const IndexedPointSet& p, double k) {
  ClusterReport rep;
  rep.radius = k;
  Box core = p.region.shrunk(k);
  const bool backed = p.scheme_backed();
  std::map<std::vector<IndexVec>, Cluster> found;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!core.contains(p.physical[i])) continue;
    ++rep.anchors;
    std::vector<IndexVec> key;
    std::vector<Vec> rel;
    for_each_neighbour(p, p.physical[i], k, [&](std::size_t j) {
      Vec d = p.physical[j] - p.physical[i];
      key.push_back(backed ? p.index[j] - p.index[i] : quantize(d));
      rel.push_back(d);
    });
    std::sort(key.begin(), key.end());
    auto [it, inserted] = found.try_emplace(std::move(key));
    if (inserted) {
      std::sort(rel.begin(), rel.end());
      it->second.points = std::move(rel);
    }
    ++it->second.multiplicity;
  }
  for (auto& [key, c] : found) rep.clusters.push_back(std::move(c));
  std::stable_sort(rep.clusters.begin(), rep.clusters.end(),
                   [](const Cluster& a, const Cluster& b) { return a.multiplicity > b.multiplicity; });
  return rep;
}

bool agree_on(const IndexedPointSet& a, const IndexedPointSet& b, const Box& box) {
  const bool by_index = index_compatible(a, b);
  auto covered = [&](const IndexedPointSet& from, const IndexedPointSet& to) {
    PointLookup look(to);
    auto [s, e] = slab(from, box.lo[0] - kMatchTol, box.hi[0] + kMatchTol);
    for (std::size_t i = s; i < e; ++i) {
      if (!box.contains(from.physical[i])) continue;
      auto hit = by_index ? look.find_index(from.index[i]) : look.find_near(from.physical[i]);
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

RepetitionReport repetition_set(const IndexedPointSet& p, double k, const Vec& center) {
  RepetitionReport rep;
  Box kbox = Box::cube(p.dim, -k, k).translated(center);
  std::vector<std::size_t> ref;
  {
    auto [a, b] = slab(p, kbox.lo[0], kbox.hi[0]);
    for (std::size_t i = a; i < b; ++i) {
      if (kbox.contains(p.physical[i])) ref.push_back(i);
    }
  }
  rep.reference_size = ref.size();
  if (ref.empty()) throw Error(ErrorCode::Undefined, "reference box holds no point");
  const bool backed = p.scheme_backed();
  PointLookup look(p);
  const std::size_t c0 = ref.front();
  for (std::size_t y = 0; y < p.size(); ++y) {
    Translation t{p.physical[y] - p.physical[c0], std::nullopt};
    if (backed) t.index = p.index[y] - p.index[c0];
    Box shifted = kbox.translated(t.vec);
    if (!p.region.contains(shifted)) continue;
    bool ok = true;
    for (std::size_t c : ref) {
      auto hit = backed ? look.find_index(p.index[c] + *t.index) : look.find_near(p.physical[c] + t.vec);
      if (!hit || !shifted.contains(p.physical[*hit])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::size_t inside = 0;
    auto [a, b] = slab(p, shifted.lo[0], shifted.hi[0]);
    for (std::size_t i = a; i < b; ++i) inside += shifted.contains(p.physical[i]) ? 1 : 0;
    if (inside == ref.size()) rep.matches.push_back(t);
  }
  std::vector<Vec> pts;
  for (const auto& t : rep.matches) pts.push_back(t.vec);
  if (p.dim == 1) {
    std::vector<double> xs;
    for (const auto& v : pts) xs.push_back(v[0]);
    std::sort(xs.begin(), xs.end());
    rep.max_gap = max_gap_1d(xs);
  } else {
    Box core = p.region.shrunk(k).translated(-center);
    rep.max_gap = covering_radius(pts, core);
  }
  return rep;
}

FrequencyTable patch_frequency(const IndexedPointSet& p, std::span<const Translation> patch,
                               const VanHoveSequence& boxes, std::span<const Vec> anchors) {
  FrequencyTable tab;
  tab.sizes = boxes.sizes;
  tab.anchors.assign(anchors.begin(), anchors.end());
  if (patch.empty()) throw Error(ErrorCode::InvalidArgument, "patch must be nonempty");
  const bool backed = p.scheme_backed() && std::all_of(patch.begin(), patch.end(), [](const Translation& t) {
                        return t.index.has_value();
                      });
  PointLookup look(p);
  const Translation& base = patch.front();
  for (const auto& a : anchors) {
    VanHoveSequence seq = boxes.at_anchor(a);
    if (!p.region.contains(seq.largest())) tab.truncated = true;
    std::vector<double> counts(seq.size(), 0.0);
    Box big = seq.largest();
    // t = y - base; the first patch point sits at y.
    auto [s, e] = slab(p, big.lo[0] - kMatchTol, big.hi[0] + kMatchTol);
    for (std::size_t y = s; y < e; ++y) {
      std::size_t level = 0;
      bool ok = true;
      for (const auto& q : patch) {
        Vec x = p.physical[y] - base.vec + q.vec;
        std::optional<std::size_t> hit;
        if (backed) {
          hit = look.find_index(p.index[y] - *base.index + *q.index);
        } else {
          hit = look.find_near(x);
        }
        if (!hit) {
          ok = false;
          break;
        }
        level = std::max(level, seq.first_containing(p.physical[*hit]));
        if (level == seq.size()) {
          ok = false;
          break;
        }
      }
      if (ok) counts[level] += 1.0;
    }
    std::vector<double> freq(seq.size());
    double run = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
      run += counts[n];
      freq[n] = run / seq.box(n).volume();
    }
    tab.frequency.push_back(std::move(freq));
  }
  if (!tab.frequency.empty()) {
    double mn = INFINITY;
    double mx = -INFINITY;
    double sum = 0.0;
    for (const auto& f : tab.frequency) {
      mn = std::min(mn, f.back());
      mx = std::max(mx, f.back());
      sum += f.back();
    }
    double mean = sum / static_cast<double>(tab.frequency.size());
    tab.spread = mean > 0.0 ? (mx - mn) / mean : 0.0;
  }
  return tab;
}

PeriodReport period_candidates(const IndexedPointSet& p, double range) {
  PeriodReport rep;
  rep.range = range < 0.0 ? p.region.inradius() / 2.0 : range;
  IndexedPointSet deltas = difference_set(p, rep.range);
  const bool backed = p.scheme_backed();
  PointLookup look(p);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    Translation t = delta_at(deltas, i);
    Box core = p.region.shrunk(max_norm(t.vec));
    bool ok = true;
    for (std::size_t j = 0; j < p.size() && ok; ++j) {
      const Vec& x = p.physical[j];
      if (core.contains(x + t.vec)) {
        ok = (backed ? look.find_index(p.index[j] + *t.index) : look.find_near(x + t.vec)).has_value();
      }
      if (ok && core.contains(x)) {
        ok = (backed ? look.find_index(p.index[j] - *t.index) : look.find_near(x - t.vec)).has_value();
      }
    }
    if (ok) rep.periods.push_back(t);
  }
  std::sort(rep.periods.begin(), rep.periods.end(), lex_by_norm);
  // Greedy independent set via Gram-Schmidt on the shortest positive periods.
  std::vector<Vec> basis;
  for (const auto& t : rep.periods) {
    if (static_cast<int>(rep.generators.size()) == p.dim) break;
    if (!positive(t.vec)) continue;
    Vec r = t.vec;
    for (const auto& b : basis) r = r - dot(r, b) * b;
    double n = norm(r);
    if (n <= 1e-9 * std::max(1.0, norm(t.vec))) continue;
    basis.push_back((1.0 / n) * r);
    rep.generators.push_back(t);
  }
  rep.full_rank = static_cast<int>(rep.generators.size()) == p.dim;
  return rep;
}

LocalMatch lt_close(const IndexedPointSet& p, const IndexedPointSet& q, double k, double v_radius) {
  LocalMatch res;
  Box kbox = Box::cube(p.dim, -k, k);
  Box reach = kbox.expanded(v_radius);
  std::vector<Translation> cands{{Vec{}, std::nullopt}};
  const bool backed = index_compatible(p, q);
  if (backed) cands.front().index = IndexVec{};
  auto [qa, qb] = slab(q, reach.lo[0], reach.hi[0]);
  for (std::size_t j = qa; j < qb; ++j) {
    if (!kbox.contains(q.physical[j])) continue;
    for_each_neighbour(p, q.physical[j], v_radius, [&](std::size_t i) {
      Translation t{q.physical[j] - p.physical[i], std::nullopt};
      if (backed) t.index = q.index[j] - p.index[i];
      cands.push_back(t);
    });
  }
  std::sort(cands.begin(), cands.end(), lex_by_norm);
  std::vector<Translation> uniq;
  for (const auto& t : cands) {
    if (uniq.empty() || max_norm(uniq.back().vec - t.vec) > kMatchTol) uniq.push_back(t);
  }
  IndexedPointSet p_local = restrict_to(p, reach.expanded(1.0));
  IndexedPointSet q_local = restrict_to(q, kbox.expanded(1.0));
  for (const auto& t : uniq) {
    if (norm(t.vec) > v_radius + kMatchTol) continue;
    ++res.candidates;
    if (agree_on(translate(p_local, t), q_local, kbox)) {
      res.close = true;
      res.v = t;
      return res;
    }
  }
  return res;
}

}  // namespace modelset
