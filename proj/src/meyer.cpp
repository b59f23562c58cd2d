#include "modelset/meyer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "modelset/diagnostics.hpp"
#include "modelset/errors.hpp"
#include "modelset/rng.hpp"

namespace modelset {

namespace {

// Position of the point nearest to x in the given norm, or nullopt when none
// lies within `limit`.
template <class Norm>
std::optional<std::size_t> nearest(const IndexedPointSet& p, const Vec& x, double limit, Norm&& dist) {
  std::optional<std::size_t> best;
  double best_d = INFINITY;
  auto [a, b] = slab(p, x[0] - limit - kMatchTol, x[0] + limit + kMatchTol);
  for (std::size_t i = a; i < b; ++i) {
    double d = dist(p.physical[i] - x);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = i;
    }
  }
  if (best && best_d <= limit + kMatchTol) return best;
  return std::nullopt;
}

std::size_t count_in_box(const IndexedPointSet& set, const Box& box) {
  auto [a, b] = slab(set, box.lo[0] - kMatchTol, box.hi[0] + kMatchTol);
  std::size_t n = 0;
  Box loose = box.expanded(kMatchTol);
  for (std::size_t i = a; i < b; ++i) n += loose.contains(set.physical[i]) ? 1 : 0;
  return n;
}

std::vector<Translation> cover_at(const IndexedPointSet& p, double r) {
  IndexedPointSet deltas = difference_set(p, r);
  const bool by_index = p.scheme_backed() && max_norm(p.offset) == 0.0;
  std::unordered_set<IndexVec, IndexVecHash> seen;
  // raw sets dedupe on a grid of cell kMatchTol, checking neighbouring cells
  std::unordered_map<IndexVec, std::vector<std::size_t>, IndexVecHash> cells;
  auto cell_of = [&](const Vec& v) {
    IndexVec c{};
    for (int j = 0; j < p.dim; ++j) c[j] = static_cast<std::int64_t>(std::floor(v[j] / kMatchTol));
    return c;
  };
  std::vector<Translation> out;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const Vec& d = deltas.physical[k];
    std::optional<std::size_t> lam;
    for (double lim = 1.0; !lam; lim *= 2.0) {
      lam = nearest(p, d, lim, [](const Vec& v) { return norm(v); });
      if (lim > 1e9) throw Error(ErrorCode::RegionTooSmall, "no point of P near a difference");
    }
    Translation f{d - p.physical[*lam], std::nullopt};
    if (by_index) {
      f.index = deltas.index[k] - p.index[*lam];
      if (!seen.insert(*f.index).second) continue;
    } else {
      IndexVec c = cell_of(f.vec);
      bool dup = false;
      int combos = 1;
      for (int j = 0; j < p.dim; ++j) combos *= 3;
      for (int m = 0; m < combos && !dup; ++m) {
        IndexVec nb = c;
        for (int j = 0, t = m; j < p.dim; ++j, t /= 3) nb[j] += t % 3 - 1;
        auto it = cells.find(nb);
        if (it == cells.end()) continue;
        for (auto g : it->second) dup = dup || max_norm(out[g].vec - f.vec) <= kMatchTol;
      }
      if (dup) continue;
      cells[c].push_back(out.size());
    }
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const Translation& a, const Translation& b) { return a.vec < b.vec; });
  return out;
}

}  // namespace

std::int64_t generator_norm(const IndexVec& index) { return l1_norm(index); }

std::int64_t generator_norm(const LatticeScheme& scheme, const ExactVec& x) {
  auto n = locate_in_lattice(scheme, x);
  if (!n) throw Error(ErrorCode::NotInL, "vector is not in L");
  return l1_norm(*n);
}

M1Report m1_cover(const IndexedPointSet& p, double r) {
  M1Report rep;
  rep.cover = cover_at(p, r);
  rep.card_r = rep.cover.size();
  rep.card_2r = cover_at(p, 2.0 * r).size();
  rep.stable = rep.card_r == rep.card_2r;
  return rep;
}

WeakUdReport weak_ud_bound(const IndexedPointSet& p, double k, std::span<const Vec> anchors) {
  WeakUdReport rep;
  double reach = 0.0;
  for (const auto& a : anchors) reach = std::max(reach, norm(a));
  reach += k * std::sqrt(static_cast<double>(p.dim));
  IndexedPointSet deltas = difference_set(p, reach);
  for (const auto& a : anchors) rep.counts.push_back(count_in_box(deltas, Box::cube(p.dim, -k, k).translated(a)));
  if (!rep.counts.empty()) {
    rep.max = *std::max_element(rep.counts.begin(), rep.counts.end());
    rep.min = *std::min_element(rep.counts.begin(), rep.counts.end());
  }
  return rep;
}

MeyerConstants meyer_constants(const IndexedPointSet& p, double reach, std::size_t n_anchors, std::uint64_t seed,
                               double half_width) {
  if (!p.scheme_backed()) throw Error(ErrorCode::NotSchemeBacked, "certificates need lattice indices");
  MeyerConstants c;
  c.reach = reach;
  c.half_width = half_width > 0.0 ? half_width : 1.1 * covering_radius(p.physical, p.region);
  const double r = c.half_width;
  const double root_d = std::sqrt(static_cast<double>(p.dim));
  if (reach / 2.0 + 2.0 * r * root_d > reach || 3.0 * r * root_d > reach) {
    throw Error(ErrorCode::RegionTooSmall, "reach too short for the box K");
  }
  c.deltas = difference_set(p, reach);
  for (std::size_t k = 0; k < c.deltas.size(); ++k) {
    if (max_norm(c.deltas.physical[k]) <= 3.0 * r + kMatchTol) c.m = std::max(c.m, l1_norm(c.deltas.index[k]));
  }
  Rng rng(seed);
  std::vector<Vec> anchors{Vec{}};
  for (std::size_t i = 0; i < n_anchors; ++i) {
    Vec u{};
    for (int j = 0; j < p.dim; ++j) u[j] = rng.uniform(-reach / 2.0, reach / 2.0);
    anchors.push_back(u);
  }
  for (const auto& u : anchors) {
    c.big_m = std::max(c.big_m, count_in_box(c.deltas, Box::cube(p.dim, -2.0 * r, 2.0 * r).translated(u)));
  }
  c.anchors = anchors.size();
  return c;
}

MeyerCertificate stepping_certificate(const IndexedPointSet& p, const IndexVec& x, const IndexVec& y,
                                      const MeyerConstants& constants) {
  if (!p.scheme_backed()) throw Error(ErrorCode::NotSchemeBacked, "certificates need lattice indices");
  PointLookup look(p);
  auto ix = look.find_index(x);
  auto iy = look.find_index(y);
  auto i0 = look.find_index(IndexVec{});
  if (!ix || !iy) throw Error(ErrorCode::InvalidArgument, "x and y must be points of P");
  if (!i0 || max_norm(p.physical[*i0]) > kMatchTol) throw Error(ErrorCode::InvalidArgument, "P must contain 0");
  const double r = constants.half_width;
  const int dim = p.dim;

  MeyerCertificate cert;
  cert.x = {p.physical[*ix], x};
  cert.y = {p.physical[*iy], y};
  const Vec xv = cert.x.vec;
  const Vec v = cert.y.vec - xv;
  const IndexVec vi = y - x;

  std::size_t big_m = constants.big_m;
  Box around_v = Box::cube(dim, -2.0 * r, 2.0 * r).translated(v);
  if (norm(v) + 2.0 * r * std::sqrt(static_cast<double>(dim)) > constants.reach) {
    throw Error(ErrorCode::RegionTooSmall, "difference y - x lies beyond the known differences");
  }
  big_m = std::max(big_m, count_in_box(constants.deltas, around_v));

  const auto steps = static_cast<std::size_t>(std::ceil(max_norm(xv) / r - 1e-12));
  auto inf_norm = [](const Vec& w) { return max_norm(w); };
  for (std::size_t i = 0; i <= steps; ++i) {
    Vec xi = steps == 0 ? xv : (1.0 - static_cast<double>(i) / static_cast<double>(steps)) * xv;
    if (i == steps) xi = Vec{};
    auto pi = nearest(p, xi, r, inf_norm);
    auto qi = nearest(p, xi + v, r, inf_norm);
    if (!pi || !qi || !p.region.shrunk(r).contains(xi) || !p.region.shrunk(r).contains(xi + v)) {
      throw ChainFailure(i, "no point of P within K of chain point " + std::to_string(i));
    }
    cert.chain.push_back({xi, {p.physical[*pi], p.index[*pi]}, {p.physical[*qi], p.index[*qi]}});
  }

  bool ok = !cert.chain.empty() && cert.chain.front().p.index == x && cert.chain.front().q.index == y &&
            is_zero(*cert.chain.back().p.index);
  std::vector<IndexVec> diffs;
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const auto& s = cert.chain[i];
    ok = ok && max_norm(s.q.vec - s.p.vec - v) <= 2.0 * r + kMatchTol;
    diffs.push_back(*s.q.index - *s.p.index);
    if (i > 0) {
      const auto& prev = cert.chain[i - 1];
      ok = ok && l1_norm(*prev.p.index - *s.p.index) <= constants.m;
      ok = ok && l1_norm(*prev.q.index - *s.q.index) <= constants.m;
    }
  }
  std::sort(diffs.begin(), diffs.end());
  cert.distinct_differences = static_cast<std::size_t>(std::unique(diffs.begin(), diffs.end()) - diffs.begin());
  ok = ok && cert.distinct_differences <= big_m;

  const auto& last = cert.chain.back().q;
  cert.f = {v - last.vec, vi - *last.index};
  cert.f_norm = l1_norm(*cert.f.index);
  cert.m = constants.m;
  cert.big_m = big_m;
  cert.f_bound = 2 * constants.m * static_cast<std::int64_t>(big_m);
  cert.valid = ok && cert.f_norm <= cert.f_bound;
  return cert;
}

}  // namespace modelset
