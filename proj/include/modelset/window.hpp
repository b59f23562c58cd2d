#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "modelset/quadratic.hpp"
#include "modelset/types.hpp"

namespace modelset {

/// One component of an interval-union window. When the window is used in an
/// exact pipeline the endpoints are also carried as field elements.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = false;
  std::optional<QuadraticNumber> exact_lo;
  std::optional<QuadraticNumber> exact_hi;
};

struct IntervalUnion {
  std::vector<Interval> components;
};

/// Convex polygon with counter-clockwise vertices.
struct ConvexPolygon {
  std::vector<Vec> vertices;
  bool boundary_included = true;
  std::vector<std::array<QuadraticNumber, 2>> exact_vertices;  // empty unless exact
};

/// Window of a scheme without internal space (m = 0): H = {0}.
struct WholeSpace {};

using WindowShape = std::variant<WholeSpace, IntervalUnion, ConvexPolygon>;

enum class Location { Interior, Boundary, Exterior };

const char* to_string(Location loc);

/// Compact window W in R^m with W equal to the closure of its interior and an
/// explicit boundary policy. Immutable after construction.
class WindowSpec {
 public:
  static WindowSpec whole();
  static WindowSpec intervals(std::vector<Interval> components, double tol = 1e-9);
  /// Single half-open [lo, hi) component.
  static WindowSpec interval(double lo, double hi, bool lo_closed = true, bool hi_closed = false,
                             double tol = 1e-9);
  static WindowSpec exact_interval(const QuadraticNumber& lo, const QuadraticNumber& hi,
                                   bool lo_closed, bool hi_closed, double tol = 1e-9);
  static WindowSpec polygon(std::vector<Vec> vertices, bool closed = true, double tol = 1e-9);
  static WindowSpec exact_polygon(std::vector<std::array<QuadraticNumber, 2>> vertices,
                                  bool closed = true, double tol = 1e-9);

  int dim() const;
  const WindowShape& shape() const { return shape_; }
  double tol() const { return tol_; }
  /// True when every boundary coordinate has an exact representation.
  bool is_exact() const;
  /// Bounding box in internal space (a zero-dimensional box for m = 0).
  Box bounding_box() const;
  double diameter() const;

  WindowSpec translated(const Vec& t) const;
  /// Exact translation; keeps the exact endpoints when the window has them.
  WindowSpec translated(const ExactVec& t) const;
  /// Same geometry with every boundary piece closed (or open).
  WindowSpec with_closure(bool closed) const;
  WindowSpec with_tol(double tol) const;

 private:
  WindowSpec(WindowShape shape, double tol);
  void validate() const;

  WindowShape shape_;
  double tol_ = 1e-9;
};

/// Classifies h; Boundary means within tol of the boundary.
Location contains(const WindowSpec& w, const Vec& h);
/// Exact classification; requires w.is_exact().
Location contains_exact(const WindowSpec& w, const ExactVec& h);

/// Membership under the window's boundary policy (float, tolerance tol).
bool member(const WindowSpec& w, const Vec& h);
/// Exact membership; falls back to the float test far from the boundary.
bool member_exact(const WindowSpec& w, const ExactVec& h, const Vec& approx);

/// Membership of h + t with t -> 0 from the direction `side`: +1 takes the
/// right limit, -1 the left limit. Only meaningful for m = 1.
bool member_one_sided(const WindowSpec& w, const ExactVec& h, int side);

/// Haar (Lebesgue) measure; 1 for the trivial internal space.
double measure(const WindowSpec& w);

/// W - W. Exact for interval unions and convex polygons.
WindowSpec minkowski_difference(const WindowSpec& w);

/// Members t of the candidate list with t + W = W (0 always included).
std::vector<Vec> stabilizer_check(const WindowSpec& w, std::span<const Vec> candidates);

struct StabilizerReport {
  std::vector<Vec> members;
  bool nontrivial = false;
};

/// Probe-based stabilizer test for shapes that are not WindowSpecs, such as
/// idealised periodic fixtures: t is kept when the indicator agrees on every
/// probe point and its translate.
StabilizerReport stabilizer_check(const std::function<bool(const Vec&)>& indicator,
                                  std::span<const Vec> probes, std::span<const Vec> candidates,
                                  int dim);

/// Signed Euclidean distance to the boundary, negative inside.
double boundary_distance(const WindowSpec& w, const Vec& h);

double intersection_measure(const WindowSpec& a, const WindowSpec& b);
/// theta(A symmetric-difference B).
double symmetric_difference_measure(const WindowSpec& a, const WindowSpec& b);
/// Hausdorff distance between the closures.
double hausdorff_distance(const WindowSpec& a, const WindowSpec& b);

/// Convex hull (counter-clockwise, no collinear vertices) of planar points.
std::vector<Vec> convex_hull(std::vector<Vec> points);

}  // namespace modelset
