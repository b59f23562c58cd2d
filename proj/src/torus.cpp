#include "modelset/torus.hpp"

#include <algorithm>
#include <cmath>

#include "modelset/errors.hpp"

namespace modelset {

namespace {

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

QuadraticNumber frac(const QuadraticNumber& x) { return x - QuadraticNumber(x.floor()); }

std::array<double, kMaxRank> to_array(const std::vector<double>& v) {
  std::array<double, kMaxRank> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

bool exact_pipeline(const LatticeScheme& scheme, const WindowSpec& window, const TorusPoint& p) {
  return scheme.is_exact() && window.is_exact() && p.exact.has_value();
}

ExactVec exact_of(const Vec& v, int n) {
  ExactVec out;
  for (int i = 0; i < n; ++i) out.emplace_back(Rational::from_double(v[i]));
  return out;
}

ExactVec add(const ExactVec& a, const ExactVec& b) {
  ExactVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

// Lattice points y with x + y in [-R, R]^d and h + y* in the window's
// bounding box (padded), visited with their index.
template <class Visit>
void for_each_near_window(const LatticeScheme& scheme, const WindowSpec& window, const Vec& x, const Vec& h,
                          double radius, double pad, Visit&& visit) {
  const int d = scheme.physical_dim();
  const int m = scheme.internal_dim();
  Box bb = window.bounding_box();
  std::array<double, kMaxRank> lo{};
  std::array<double, kMaxRank> hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = -radius - x[i];
    hi[i] = radius - x[i];
  }
  for (int i = 0; i < m; ++i) {
    lo[d + i] = bb.lo[i] - h[i] - pad;
    hi[d + i] = bb.hi[i] - h[i] + pad;
  }
  for_each_index_in_box(scheme.map(), lo, hi, EnumerateOptions{}.budget, visit);
}

}  // namespace

TorusPoint torus_point(std::vector<double> coords) {
  for (auto& c : coords) c = frac(c);
  return {std::move(coords), std::nullopt};
}

TorusPoint torus_point(const ExactVec& coords) {
  TorusPoint p;
  ExactVec f;
  for (const auto& c : coords) {
    f.push_back(frac(c));
    p.frac.push_back(f.back().to_double());
  }
  p.exact = std::move(f);
  return p;
}

TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
  if (a.rank() != b.rank()) throw Error(ErrorCode::InvalidArgument, "torus points of different rank");
  if (a.exact && b.exact) return torus_point(add(*a.exact, *b.exact));
  std::vector<double> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.frac[i] + b.frac[i];
  return torus_point(std::move(c));
}

TorusPoint operator-(const TorusPoint& a) {
  if (a.exact) {
    ExactVec c;
    for (const auto& v : *a.exact) c.push_back(-v);
    return torus_point(c);
  }
  std::vector<double> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.frac[i];
  return torus_point(std::move(c));
}

bool operator==(const TorusPoint& a, const TorusPoint& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  if (a.rank() != b.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    double d = std::fabs(a.frac[i] - b.frac[i]);
    if (std::fmin(d, 1.0 - d) > 1e-9) return false;
  }
  return true;
}

TorusPoint beta_of_cut(const LatticeScheme& scheme, const Vec& x, const Vec& h) {
  std::array<double, kMaxRank> v{};
  for (int i = 0; i < scheme.physical_dim(); ++i) v[i] = x[i];
  for (int i = 0; i < scheme.internal_dim(); ++i) v[scheme.physical_dim() + i] = h[i];
  auto c = scheme.coordinates(v);
  return torus_point(std::vector<double>(c.begin(), c.begin() + scheme.rank()));
}

TorusPoint beta_of_cut(const LatticeScheme& scheme, const ExactVec& x, const ExactVec& h) {
  ExactVec v = x;
  v.resize(static_cast<std::size_t>(scheme.physical_dim()));
  for (int i = 0; i < scheme.internal_dim(); ++i) {
    v.push_back(static_cast<std::size_t>(i) < h.size() ? h[static_cast<std::size_t>(i)] : QuadraticNumber());
  }
  return torus_point(scheme.exact_coordinates(v));
}

TorusPoint embed_translation(const LatticeScheme& scheme, const Vec& t) { return beta_of_cut(scheme, t, Vec{}); }

TorusPoint embed_translation(const LatticeScheme& scheme, const ExactVec& t) {
  return beta_of_cut(scheme, t, ExactVec(static_cast<std::size_t>(scheme.internal_dim())));
}

std::pair<Vec, Vec> representative(const LatticeScheme& scheme, const TorusPoint& p) {
  auto v = scheme.apply(to_array(p.frac));
  Vec x{};
  Vec h{};
  for (int i = 0; i < scheme.physical_dim(); ++i) x[i] = v[i];
  for (int i = 0; i < scheme.internal_dim(); ++i) h[i] = v[scheme.physical_dim() + i];
  return {x, h};
}

std::pair<ExactVec, ExactVec> exact_representative(const LatticeScheme& scheme, const TorusPoint& p) {
  if (!p.exact) throw Error(ErrorCode::InvalidArgument, "torus point has no exact coordinates");
  ExactVec v = scheme.exact_apply(*p.exact);
  auto d = static_cast<std::ptrdiff_t>(scheme.physical_dim());
  return {ExactVec(v.begin(), v.begin() + d), ExactVec(v.begin() + d, v.end())};
}

double torus_distance(const LatticeScheme& scheme, const TorusPoint& a, const TorusPoint& b) {
  const int r = scheme.rank();
  std::array<double, kMaxRank> diff{};
  for (int i = 0; i < r; ++i) {
    double d = a.frac[static_cast<std::size_t>(i)] - b.frac[static_cast<std::size_t>(i)];
    diff[i] = d - std::round(d);
  }
  double best = INFINITY;
  std::array<int, kMaxRank> s{};
  s.fill(-1);
  while (true) {
    std::array<double, kMaxRank> c{};
    for (int i = 0; i < r; ++i) c[i] = diff[i] + s[i];
    auto v = scheme.apply(c);
    double n = 0.0;
    for (int i = 0; i < r; ++i) n += v[i] * v[i];
    best = std::min(best, std::sqrt(n));
    int i = 0;
    while (i < r && ++s[i] == 2) s[i++] = -1;
    if (i == r) break;
  }
  return best;
}

std::vector<BoundaryHit> singularity_test(const LatticeScheme& scheme, const WindowSpec& window,
                                          const TorusPoint& p, double radius) {
  std::vector<BoundaryHit> hits;
  if (scheme.internal_dim() == 0) return hits;
  const bool exact = exact_pipeline(scheme, window, p);
  auto [x, h] = representative(scheme, p);
  std::optional<ExactVec> eh;
  if (exact) eh = exact_representative(scheme, p).second;
  const double band = std::max(window.tol(), 1e-6);
  for_each_near_window(scheme, window, x, h, radius, band, [&](const IndexVec& n) {
    Vec y = scheme.physical(n);
    Vec px = x + y;
    for (int i = 0; i < scheme.physical_dim(); ++i) {
      if (std::fabs(px[i]) > radius) return;
    }
    Vec s = h + scheme.star(n);
    if (std::fabs(boundary_distance(window, s)) > band) return;
    Location loc = exact ? contains_exact(window, add(*eh, scheme.exact_star(n))) : contains(window, s);
    if (loc == Location::Boundary) hits.push_back({n, px, s});
  });
  std::sort(hits.begin(), hits.end(),
            [](const BoundaryHit& a, const BoundaryHit& b) { return a.physical < b.physical; });
  return hits;
}

FiberReport fiber_enumerate(const std::shared_ptr<const LatticeScheme>& scheme, const WindowSpec& window,
                            const TorusPoint& p, double radius) {
  if (scheme->internal_dim() != 1 || !std::holds_alternative<IntervalUnion>(window.shape())) {
    throw Error(ErrorCode::UnsupportedDimension, "fibers are enumerated for interval windows in R^1 only");
  }
  FiberReport rep;
  rep.hits = singularity_test(*scheme, window, p, radius);
  const bool exact = exact_pipeline(*scheme, window, p);
  auto [x, h] = representative(*scheme, p);
  ExactVec eh = exact ? exact_representative(*scheme, p).second : exact_of(h, 1);
  const int d = scheme->physical_dim();

  std::vector<int> sides = rep.hits.empty() ? std::vector<int>{0} : std::vector<int>{+1, -1};
  for (int side : sides) {
    IndexedPointSet e;
    e.dim = d;
    e.region = Box::cube(d, -radius, radius);
    e.scheme = scheme;
    e.offset = x;
    for_each_near_window(*scheme, window, x, h, radius, 1e-6, [&](const IndexVec& n) {
      Vec px = x + scheme->physical(n);
      for (int i = 0; i < d; ++i) {
        if (std::fabs(px[i]) > radius) return;
      }
      Vec s = h + scheme->star(n);
      bool in;
      if (side == 0) {
        in = exact ? member_exact(window, add(eh, scheme->exact_star(n)), s) : member(window, s);
      } else if (std::fabs(boundary_distance(window, s)) > 1e-6) {
        in = member(window, s);
      } else {
        ExactVec hs = exact ? add(eh, scheme->exact_star(n)) : exact_of(s, 1);
        in = member_one_sided(window, hs, side);
      }
      if (!in) return;
      e.physical.push_back(px);
      e.index.push_back(n);
      e.star.push_back(scheme->star(n));
    });
    e.sort();
    if (!rep.elements.empty() && rep.elements.back().index == e.index) continue;
    rep.elements.push_back(std::move(e));
  }
  std::vector<double> points;
  for (const auto& hit : rep.hits) {
    bool seen = std::any_of(points.begin(), points.end(), [&](double v) { return std::fabs(v - hit.star[0]) < 1e-9; });
    if (!seen) points.push_back(hit.star[0]);
  }
  rep.multiple_boundary_points = points.size() > 1;
  return rep;
}

ReconstructionReport reconstruct_window(const IndexedPointSet& p, const WindowSpec* truth, double threshold) {
  if (!p.scheme_backed()) throw Error(ErrorCode::NotSchemeBacked, "window reconstruction needs lattice indices");
  const int m = p.scheme->internal_dim();
  std::vector<Vec> stars;
  for (std::size_t i = 0; i < p.size(); ++i) stars.push_back(p.star.empty() ? p.scheme->star(p.index[i]) : p.star[i]);
  ReconstructionReport rep;
  if (m == 1) {
    std::vector<double> s;
    for (const auto& v : stars) s.push_back(v[0]);
    std::sort(s.begin(), s.end());
    if (s.size() < 2) {
      rep.insufficient_data = true;
      return rep;
    }
    double nn_max = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double left = i > 0 ? s[i] - s[i - 1] : INFINITY;
      double right = i + 1 < s.size() ? s[i + 1] - s[i] : INFINITY;
      nn_max = std::max(nn_max, std::min(left, right));
    }
    rep.threshold = threshold > 0.0 ? threshold : 5.0 * nn_max;
    std::vector<Interval> comps;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      if (i < s.size() && s[i] - s[i - 1] <= rep.threshold) continue;
      if (s[i - 1] > s[start]) {
        comps.push_back({s[start], s[i - 1], true, true, std::nullopt, std::nullopt});
      } else {
        rep.insufficient_data = true;  // isolated star image
      }
      start = i;
    }
    if (comps.empty()) {
      rep.insufficient_data = true;
      return rep;
    }
    rep.components = comps.size();
    rep.estimate = WindowSpec::intervals(std::move(comps));
  } else if (m == 2) {
    auto hull = convex_hull(stars);
    if (hull.size() < 3) {
      rep.insufficient_data = true;
      return rep;
    }
    rep.components = 1;
    rep.estimate = WindowSpec::polygon(std::move(hull), true);
  } else {
    throw Error(ErrorCode::UnsupportedDimension, "reconstruction supports m = 1 and m = 2");
  }
  if (truth != nullptr) rep.hausdorff = hausdorff_distance(*rep.estimate, *truth);
  return rep;
}

std::vector<ContinuityRow> continuity_epsilon(const IndexedPointSet& p, const AutocorrelationTable& table,
                                              std::span<const double> ms) {
  std::vector<std::size_t> order(table.deltas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t b = table.last_box();
  auto d_of = [&](std::size_t k) { return 2.0 * (table.eta0[b] - table.eta[b][k]); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    double da = d_of(a);
    double dc = d_of(c);
    return da != dc ? da < dc : norm(table.deltas[a]) < norm(table.deltas[c]);
  });
  const bool by_index = p.scheme_backed() && !table.delta_index.empty();
  PointLookup look(p);
  std::vector<ContinuityRow> rows;
  for (double m : ms) {
    Box am = Box::cube(p.dim, -m, m);
    if (!p.region.contains(am.expanded(table.radius))) {
      throw Error(ErrorCode::RegionTooSmall, "region must contain [-M, M]^d expanded by the table radius");
    }
    // Patch match (t + P) and P on A_M.
    auto matches = [&](std::size_t k) {
      const Vec& t = table.deltas[k];
      Box pre = am.translated(-t);
      auto [a0, a1] = slab(p, am.lo[0] - kMatchTol, am.hi[0] + kMatchTol);
      for (std::size_t i = a0; i < a1; ++i) {
        if (!am.contains(p.physical[i])) continue;
        auto hit = by_index ? look.find_index(p.index[i] - table.delta_index[k]) : look.find_near(p.physical[i] - t);
        if (!hit) return false;
      }
      auto [b0, b1] = slab(p, pre.lo[0] - kMatchTol, pre.hi[0] + kMatchTol);
      for (std::size_t i = b0; i < b1; ++i) {
        if (!am.contains(p.physical[i] + t)) continue;
        auto hit = by_index ? look.find_index(p.index[i] + table.delta_index[k]) : look.find_near(p.physical[i] + t);
        if (!hit) return false;
      }
      return true;
    };
    ContinuityRow row;
    row.m = m;
    row.epsilon = 2.0 * table.eta0[b];
    row.capped = true;
    for (std::size_t k : order) {
      if (!matches(k)) {
        row.epsilon = d_of(k);
        row.capped = false;
        break;
      }
    }
    for (std::size_t k : order) {
      if (d_of(k) < row.epsilon && max_norm(table.deltas[k]) > kMatchTol) ++row.members;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace modelset
