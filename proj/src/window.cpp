#include "modelset/window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modelset/errors.hpp"

namespace modelset {

namespace {

// Beyond this distance from the boundary the float test is authoritative
// even in exact pipelines.
constexpr double kExactBand = 1e-6;

double cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double polygon_area(const std::vector<Vec>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * s;
}

double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + t * ab));
}

// Largest signed distance from h to the edge lines; negative strictly inside.
double max_edge_offset(const ConvexPolygon& poly, const Vec& h) {
  double worst = -std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    Vec e = b - a;
    double len = std::hypot(e[0], e[1]);
    // Outward normal of a CCW edge is (e_y, -e_x).
    double s = (e[1] * (h[0] - a[0]) - e[0] * (h[1] - a[1])) / len;
    worst = std::max(worst, s);
  }
  return worst;
}

int exact_orientation(const std::array<QuadraticNumber, 2>& a, const std::array<QuadraticNumber, 2>& b,
                      const ExactVec& h) {
  QuadraticNumber c = (b[0] - a[0]) * (h[1] - a[1]) - (b[1] - a[1]) * (h[0] - a[0]);
  return c.sign();
}

Location classify_interval(const Interval& c, double h, double tol) {
  if (h < c.lo - tol || h > c.hi + tol) return Location::Exterior;
  if (std::fabs(h - c.lo) <= tol || std::fabs(h - c.hi) <= tol) return Location::Boundary;
  return Location::Interior;
}

bool member_interval(const Interval& c, double h, double tol) {
  if (h < c.lo - tol || h > c.hi + tol) return false;
  if (std::fabs(h - c.lo) <= tol) return c.lo_closed;
  if (std::fabs(h - c.hi) <= tol) return c.hi_closed;
  return true;
}

bool member_interval_exact(const Interval& c, const QuadraticNumber& h) {
  int lo = (h - *c.exact_lo).sign();
  int hi = (h - *c.exact_hi).sign();
  if (lo < 0 || hi > 0) return false;
  if (lo == 0) return c.lo_closed;
  if (hi == 0) return c.hi_closed;
  return true;
}

// Equality of two endpoints, exact when both sides are exact.
bool same_point(double a, const std::optional<QuadraticNumber>& ea, double b,
                const std::optional<QuadraticNumber>& eb, double tol) {
  if (ea && eb) return *ea == *eb;
  return std::fabs(a - b) <= tol;
}

bool less_point(double a, const std::optional<QuadraticNumber>& ea, double b,
                const std::optional<QuadraticNumber>& eb, double tol) {
  if (same_point(a, ea, b, eb, tol)) return false;
  return a < b;
}

std::vector<Interval> merge_components(std::vector<Interval> parts, double tol) {
  std::sort(parts.begin(), parts.end(), [&](const Interval& x, const Interval& y) {
    if (!same_point(x.lo, x.exact_lo, y.lo, y.exact_lo, tol)) return x.lo < y.lo;
    return x.lo_closed && !y.lo_closed;
  });
  std::vector<Interval> out;
  for (const Interval& p : parts) {
    if (!out.empty()) {
      Interval& cur = out.back();
      bool overlaps = less_point(p.lo, p.exact_lo, cur.hi, cur.exact_hi, tol);
      bool touches = same_point(p.lo, p.exact_lo, cur.hi, cur.exact_hi, tol) &&
                     (p.lo_closed || cur.hi_closed);
      if (overlaps || touches) {
        if (less_point(cur.hi, cur.exact_hi, p.hi, p.exact_hi, tol)) {
          cur.hi = p.hi;
          cur.exact_hi = p.exact_hi;
          cur.hi_closed = p.hi_closed;
        } else if (same_point(cur.hi, cur.exact_hi, p.hi, p.exact_hi, tol)) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

struct HullPoint {
  Vec v;
  std::size_t tag;
};

// Andrew's monotone chain; drops collinear points.
std::vector<HullPoint> hull_tagged(std::vector<HullPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const HullPoint& a, const HullPoint& b) { return a.v < b.v; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const HullPoint& a, const HullPoint& b) {
                          return std::fabs(a.v[0] - b.v[0]) < 1e-12 && std::fabs(a.v[1] - b.v[1]) < 1e-12;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, max_norm(p.v));
  double eps = 1e-12 * std::max(1.0, scale * scale);
  std::vector<HullPoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2].v, h[k - 1].v, p.v) <= eps) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2].v, h[k - 1].v, pts[i].v) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<Vec> clip_convex(const std::vector<Vec>& subject, const std::vector<Vec>& clip) {
  std::vector<Vec> out = subject;
  for (std::size_t i = 0; i < clip.size() && !out.empty(); ++i) {
    const Vec& a = clip[i];
    const Vec& b = clip[(i + 1) % clip.size()];
    std::vector<Vec> in = std::move(out);
    out.clear();
    for (std::size_t j = 0; j < in.size(); ++j) {
      const Vec& p = in[j];
      const Vec& q = in[(j + 1) % in.size()];
      double sp = cross(a, b, p);
      double sq = cross(a, b, q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        double t = sp / (sp - sq);
        out.push_back(p + t * (q - p));
      }
    }
  }
  return out;
}

double interval_union_distance(const IntervalUnion& u, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : u.components) {
    if (x >= c.lo && x <= c.hi) return 0.0;
    best = std::min(best, std::min(std::fabs(x - c.lo), std::fabs(x - c.hi)));
  }
  return best;
}

double directed_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<double> probes;
  for (const auto& c : a.components) {
    probes.push_back(c.lo);
    probes.push_back(c.hi);
  }
  for (std::size_t i = 0; i + 1 < b.components.size(); ++i) {
    double mid = 0.5 * (b.components[i].hi + b.components[i + 1].lo);
    for (const auto& c : a.components) {
      if (mid >= c.lo && mid <= c.hi) probes.push_back(mid);
    }
  }
  double worst = 0.0;
  for (double p : probes) worst = std::max(worst, interval_union_distance(b, p));
  return worst;
}

double polygon_point_distance(const ConvexPolygon& poly, const Vec& p) {
  if (max_edge_offset(poly, p) <= 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

}  // namespace

const char* to_string(Location loc) {
  switch (loc) {
    case Location::Interior: return "Interior";
    case Location::Boundary: return "Boundary";
    case Location::Exterior: return "Exterior";
  }
  return "?";
}

// ---------------------------------------------------------------- WindowSpec

WindowSpec::WindowSpec(WindowShape shape, double tol) : shape_(std::move(shape)), tol_(tol) {
  validate();
}

WindowSpec WindowSpec::whole() { return WindowSpec(WholeSpace{}, 1e-9); }

WindowSpec WindowSpec::intervals(std::vector<Interval> components, double tol) {
  return WindowSpec(IntervalUnion{std::move(components)}, tol);
}

WindowSpec WindowSpec::interval(double lo, double hi, bool lo_closed, bool hi_closed, double tol) {
  return intervals({Interval{lo, hi, lo_closed, hi_closed, std::nullopt, std::nullopt}}, tol);
}

WindowSpec WindowSpec::exact_interval(const QuadraticNumber& lo, const QuadraticNumber& hi,
                                      bool lo_closed, bool hi_closed, double tol) {
  return intervals({Interval{lo.to_double(), hi.to_double(), lo_closed, hi_closed, lo, hi}}, tol);
}

WindowSpec WindowSpec::polygon(std::vector<Vec> vertices, bool closed, double tol) {
  return WindowSpec(ConvexPolygon{std::move(vertices), closed, {}}, tol);
}

WindowSpec WindowSpec::exact_polygon(std::vector<std::array<QuadraticNumber, 2>> vertices, bool closed,
                                     double tol) {
  std::vector<Vec> approx;
  approx.reserve(vertices.size());
  for (const auto& v : vertices) approx.push_back({v[0].to_double(), v[1].to_double(), 0.0});
  return WindowSpec(ConvexPolygon{std::move(approx), closed, std::move(vertices)}, tol);
}

void WindowSpec::validate() const {
  if (tol_ < 0) throw Error(ErrorCode::InvalidArgument, "negative window tolerance");
  if (const auto* u = std::get_if<IntervalUnion>(&shape_)) {
    if (u->components.empty()) throw Error(ErrorCode::InvalidArgument, "window has no components");
    for (std::size_t i = 0; i < u->components.size(); ++i) {
      const Interval& c = u->components[i];
      if (!(c.lo < c.hi)) throw Error(ErrorCode::InvalidArgument, "interval component with lo >= hi");
      if (c.exact_lo.has_value() != c.exact_hi.has_value()) {
        throw Error(ErrorCode::InvalidArgument, "interval has only one exact endpoint");
      }
      if (i > 0) {
        const Interval& p = u->components[i - 1];
        bool disjoint = p.hi < c.lo || (p.hi == c.lo && !(p.hi_closed && c.lo_closed));
        if (!disjoint) throw Error(ErrorCode::InvalidArgument, "interval components overlap or are unsorted");
      }
    }
  } else if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) {
    const auto& v = p->vertices;
    if (v.size() < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
    if (polygon_area(v) <= 0) throw Error(ErrorCode::InvalidArgument, "polygon must be CCW with positive area");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (cross(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) < -1e-12) {
        throw Error(ErrorCode::UnsupportedShape, "polygon is not convex");
      }
    }
    if (!p->exact_vertices.empty() && p->exact_vertices.size() != v.size()) {
      throw Error(ErrorCode::InvalidArgument, "exact vertex count mismatch");
    }
  }
}

int WindowSpec::dim() const {
  if (std::holds_alternative<WholeSpace>(shape_)) return 0;
  if (std::holds_alternative<IntervalUnion>(shape_)) return 1;
  return 2;
}

bool WindowSpec::is_exact() const {
  if (const auto* u = std::get_if<IntervalUnion>(&shape_)) {
    return std::all_of(u->components.begin(), u->components.end(),
                       [](const Interval& c) { return c.exact_lo.has_value(); });
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) return !p->exact_vertices.empty();
  return true;
}

Box WindowSpec::bounding_box() const {
  Box b{dim(), {}, {}};
  if (const auto* u = std::get_if<IntervalUnion>(&shape_)) {
    b.lo[0] = u->components.front().lo;
    b.hi[0] = u->components.back().hi;
  } else if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) {
    b.lo = {INFINITY, INFINITY, 0};
    b.hi = {-INFINITY, -INFINITY, 0};
    for (const auto& v : p->vertices) {
      for (int i = 0; i < 2; ++i) {
        b.lo[i] = std::min(b.lo[i], v[i]);
        b.hi[i] = std::max(b.hi[i], v[i]);
      }
    }
  }
  return b;
}

double WindowSpec::diameter() const {
  if (const auto* u = std::get_if<IntervalUnion>(&shape_)) {
    return u->components.back().hi - u->components.front().lo;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_)) {
    double d = 0.0;
    for (const auto& a : p->vertices) {
      for (const auto& b : p->vertices) d = std::max(d, norm(a - b));
    }
    return d;
  }
  return 0.0;
}

WindowSpec WindowSpec::translated(const Vec& t) const {
  WindowShape s = shape_;
  if (auto* u = std::get_if<IntervalUnion>(&s)) {
    for (auto& c : u->components) {
      c.lo += t[0];
      c.hi += t[0];
      c.exact_lo.reset();
      c.exact_hi.reset();
    }
  } else if (auto* p = std::get_if<ConvexPolygon>(&s)) {
    for (auto& v : p->vertices) v = v + t;
    p->exact_vertices.clear();
  }
  return WindowSpec(std::move(s), tol_);
}

WindowSpec WindowSpec::translated(const ExactVec& t) const {
  WindowShape s = shape_;
  if (auto* u = std::get_if<IntervalUnion>(&s)) {
    for (auto& c : u->components) {
      if (c.exact_lo) {
        c.exact_lo = *c.exact_lo + t.at(0);
        c.exact_hi = *c.exact_hi + t.at(0);
        c.lo = c.exact_lo->to_double();
        c.hi = c.exact_hi->to_double();
      } else {
        c.lo += t.at(0).to_double();
        c.hi += t.at(0).to_double();
      }
    }
  } else if (auto* p = std::get_if<ConvexPolygon>(&s)) {
    for (std::size_t i = 0; i < p->vertices.size(); ++i) {
      if (!p->exact_vertices.empty()) {
        p->exact_vertices[i][0] += t.at(0);
        p->exact_vertices[i][1] += t.at(1);
        p->vertices[i] = {p->exact_vertices[i][0].to_double(), p->exact_vertices[i][1].to_double(), 0.0};
      } else {
        p->vertices[i][0] += t.at(0).to_double();
        p->vertices[i][1] += t.at(1).to_double();
      }
    }
  }
  return WindowSpec(std::move(s), tol_);
}

WindowSpec WindowSpec::with_closure(bool closed) const {
  WindowShape s = shape_;
  if (auto* u = std::get_if<IntervalUnion>(&s)) {
    for (auto& c : u->components) c.lo_closed = c.hi_closed = closed;
    if (closed) u->components = merge_components(std::move(u->components), tol_);
  } else if (auto* p = std::get_if<ConvexPolygon>(&s)) {
    p->boundary_included = closed;
  }
  return WindowSpec(std::move(s), tol_);
}

WindowSpec WindowSpec::with_tol(double tol) const { return WindowSpec(shape_, tol); }

// ---------------------------------------------------------------- predicates

Location contains(const WindowSpec& w, const Vec& h) {
  const double tol = w.tol();
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    Location best = Location::Exterior;
    for (const auto& c : u->components) {
      Location l = classify_interval(c, h[0], tol);
      if (l == Location::Interior) return l;
      if (l == Location::Boundary) best = l;
    }
    return best;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    double s = max_edge_offset(*p, h);
    if (s < -tol) return Location::Interior;
    if (s > tol) return Location::Exterior;
    return Location::Boundary;
  }
  return Location::Interior;
}

Location contains_exact(const WindowSpec& w, const ExactVec& h) {
  if (!w.is_exact()) throw Error(ErrorCode::InvalidArgument, "window has no exact representation");
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    Location best = Location::Exterior;
    for (const auto& c : u->components) {
      int lo = (h.at(0) - *c.exact_lo).sign();
      int hi = (h.at(0) - *c.exact_hi).sign();
      if (lo > 0 && hi < 0) return Location::Interior;
      if (lo == 0 || hi == 0) best = Location::Boundary;
    }
    return best;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    const auto& v = p->exact_vertices;
    bool on_edge = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      int o = exact_orientation(v[i], v[(i + 1) % v.size()], h);
      if (o < 0) return Location::Exterior;
      if (o == 0) on_edge = true;
    }
    return on_edge ? Location::Boundary : Location::Interior;
  }
  return Location::Interior;
}

bool member(const WindowSpec& w, const Vec& h) {
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    for (const auto& c : u->components) {
      if (member_interval(c, h[0], w.tol())) return true;
    }
    return false;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    double s = max_edge_offset(*p, h);
    if (s < -w.tol()) return true;
    if (s > w.tol()) return false;
    return p->boundary_included;
  }
  return true;
}

bool member_exact(const WindowSpec& w, const ExactVec& h, const Vec& approx) {
  if (!w.is_exact()) return member(w, approx);
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    for (const auto& c : u->components) {
      double x = approx[0];
      if (std::fabs(x - c.lo) > kExactBand && std::fabs(x - c.hi) > kExactBand) {
        if (x > c.lo && x < c.hi) return true;
        continue;
      }
      if (member_interval_exact(c, h.at(0))) return true;
    }
    return false;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    double s = max_edge_offset(*p, approx);
    if (s < -kExactBand) return true;
    if (s > kExactBand) return false;
    Location l = contains_exact(w, h);
    if (l == Location::Interior) return true;
    if (l == Location::Exterior) return false;
    return p->boundary_included;
  }
  return true;
}

bool member_one_sided(const WindowSpec& w, const ExactVec& h, int side) {
  const auto* u = std::get_if<IntervalUnion>(&w.shape());
  if (u == nullptr) throw Error(ErrorCode::UnsupportedDimension, "one-sided limits need an interval window");
  for (const auto& c : u->components) {
    int lo;
    int hi;
    if (c.exact_lo) {
      lo = (h.at(0) - *c.exact_lo).sign();
      hi = (h.at(0) - *c.exact_hi).sign();
    } else {
      double x = h.at(0).to_double();
      lo = std::fabs(x - c.lo) <= w.tol() ? 0 : (x > c.lo ? 1 : -1);
      hi = std::fabs(x - c.hi) <= w.tol() ? 0 : (x > c.hi ? 1 : -1);
    }
    if (side > 0 && lo >= 0 && hi < 0) return true;
    if (side < 0 && lo > 0 && hi <= 0) return true;
  }
  return false;
}

double measure(const WindowSpec& w) {
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    double s = 0.0;
    for (const auto& c : u->components) s += c.hi - c.lo;
    return s;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) return polygon_area(p->vertices);
  return 1.0;
}

WindowSpec minkowski_difference(const WindowSpec& w) {
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    std::vector<Interval> parts;
    for (const auto& a : u->components) {
      for (const auto& b : u->components) {
        Interval d;
        d.lo = a.lo - b.hi;
        d.hi = a.hi - b.lo;
        d.lo_closed = a.lo_closed && b.hi_closed;
        d.hi_closed = a.hi_closed && b.lo_closed;
        if (a.exact_lo && b.exact_lo) {
          d.exact_lo = *a.exact_lo - *b.exact_hi;
          d.exact_hi = *a.exact_hi - *b.exact_lo;
          d.lo = d.exact_lo->to_double();
          d.hi = d.exact_hi->to_double();
        }
        parts.push_back(d);
      }
    }
    return WindowSpec::intervals(merge_components(std::move(parts), w.tol()), w.tol());
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    std::vector<HullPoint> pts;
    const std::size_t n = p->vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pts.push_back({p->vertices[i] - p->vertices[j], i * n + j});
    }
    auto hull = hull_tagged(std::move(pts));
    if (p->exact_vertices.empty()) {
      std::vector<Vec> v;
      for (const auto& h : hull) v.push_back(h.v);
      return WindowSpec::polygon(std::move(v), p->boundary_included, w.tol());
    }
    std::vector<std::array<QuadraticNumber, 2>> v;
    for (const auto& h : hull) {
      const auto& a = p->exact_vertices[h.tag / n];
      const auto& b = p->exact_vertices[h.tag % n];
      v.push_back({a[0] - b[0], a[1] - b[1]});
    }
    return WindowSpec::exact_polygon(std::move(v), p->boundary_included, w.tol());
  }
  return w;
}

std::vector<Vec> stabilizer_check(const WindowSpec& w, std::span<const Vec> candidates) {
  std::vector<Vec> out{Vec{}};
  const double tol = w.tol();
  for (const Vec& t : candidates) {
    if (max_norm(t) <= tol) continue;
    bool equal = false;
    if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
      equal = true;
      for (const auto& c : u->components) {
        bool found = false;
        for (const auto& d : u->components) {
          if (std::fabs(c.lo + t[0] - d.lo) <= tol && std::fabs(c.hi + t[0] - d.hi) <= tol &&
              c.lo_closed == d.lo_closed && c.hi_closed == d.hi_closed) {
            found = true;
          }
        }
        equal = equal && found;
      }
    } else if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
      equal = true;
      for (const auto& v : p->vertices) {
        bool found = false;
        for (const auto& q : p->vertices) found = found || max_norm(v + t - q) <= tol;
        equal = equal && found;
      }
    } else {
      equal = true;  // H = {0}: every candidate is the zero vector of R^0.
    }
    if (equal) out.push_back(t);
  }
  return out;
}

StabilizerReport stabilizer_check(const std::function<bool(const Vec&)>& indicator,
                                  std::span<const Vec> probes, std::span<const Vec> candidates,
                                  int dim) {
  StabilizerReport report;
  report.members.push_back(Vec{});
  for (const Vec& t : candidates) {
    Vec tt{};
    for (int i = 0; i < dim; ++i) tt[i] = t[i];
    if (max_norm(tt) == 0.0) continue;
    bool stable = std::all_of(probes.begin(), probes.end(),
                              [&](const Vec& h) { return indicator(h) == indicator(h + tt); });
    if (stable) report.members.push_back(tt);
  }
  report.nontrivial = report.members.size() > 1;
  return report;
}

double boundary_distance(const WindowSpec& w, const Vec& h) {
  if (const auto* u = std::get_if<IntervalUnion>(&w.shape())) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : u->components) {
      double d = std::min(std::fabs(h[0] - c.lo), std::fabs(h[0] - c.hi));
      if (h[0] > c.lo && h[0] < c.hi) return -d;
      best = std::min(best, d);
    }
    return best;
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&w.shape())) {
    double s = max_edge_offset(*p, h);
    if (s <= 0) return s;
    return polygon_point_distance(*p, h);
  }
  return -std::numeric_limits<double>::infinity();
}

double intersection_measure(const WindowSpec& a, const WindowSpec& b) {
  const auto* ua = std::get_if<IntervalUnion>(&a.shape());
  const auto* ub = std::get_if<IntervalUnion>(&b.shape());
  if (ua && ub) {
    double s = 0.0;
    for (const auto& x : ua->components) {
      for (const auto& y : ub->components) s += std::max(0.0, std::min(x.hi, y.hi) - std::max(x.lo, y.lo));
    }
    return s;
  }
  const auto* pa = std::get_if<ConvexPolygon>(&a.shape());
  const auto* pb = std::get_if<ConvexPolygon>(&b.shape());
  if (pa && pb) {
    auto clipped = clip_convex(pa->vertices, pb->vertices);
    return clipped.size() < 3 ? 0.0 : std::fabs(polygon_area(clipped));
  }
  if (a.dim() == 0 && b.dim() == 0) return 1.0;
  throw Error(ErrorCode::UnsupportedShape, "intersection of windows of different kinds");
}

double symmetric_difference_measure(const WindowSpec& a, const WindowSpec& b) {
  return std::max(0.0, measure(a) + measure(b) - 2.0 * intersection_measure(a, b));
}

double hausdorff_distance(const WindowSpec& a, const WindowSpec& b) {
  const auto* ua = std::get_if<IntervalUnion>(&a.shape());
  const auto* ub = std::get_if<IntervalUnion>(&b.shape());
  if (ua && ub) return std::max(directed_hausdorff(*ua, *ub), directed_hausdorff(*ub, *ua));
  const auto* pa = std::get_if<ConvexPolygon>(&a.shape());
  const auto* pb = std::get_if<ConvexPolygon>(&b.shape());
  if (pa && pb) {
    double d = 0.0;
    for (const auto& v : pa->vertices) d = std::max(d, polygon_point_distance(*pb, v));
    for (const auto& v : pb->vertices) d = std::max(d, polygon_point_distance(*pa, v));
    return d;
  }
  if (a.dim() == 0 && b.dim() == 0) return 0.0;
  throw Error(ErrorCode::UnsupportedShape, "Hausdorff distance between windows of different kinds");
}

std::vector<Vec> convex_hull(std::vector<Vec> points) {
  std::vector<HullPoint> tagged;
  tagged.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) tagged.push_back({points[i], i});
  std::vector<Vec> out;
  for (const auto& h : hull_tagged(std::move(tagged))) out.push_back(h.v);
  return out;
}

}  // namespace modelset
