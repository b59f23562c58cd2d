#include "modelset/scheme.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "modelset/errors.hpp"

namespace modelset {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct Echelon {
  RationalMatrix rows;          // reduced row echelon form
  std::vector<int> pivot_cols;  // pivot column per nonzero row
};

Echelon reduce(RationalMatrix a, int cols) {
  Echelon e;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= f * a[row][k];
    }
    e.pivot_cols.push_back(c);
    ++row;
  }
  e.rows = std::move(a);
  return e;
}

// Physical rows split into rational and irrational parts: L -> Q^{2d}.
RationalMatrix physical_rational_system(const LatticeScheme& s) {
  RationalMatrix a;
  const int r = s.rank();
  for (int part = 0; part < 2; ++part) {
    for (int i = 0; i < s.physical_dim(); ++i) {
      std::vector<Rational> row;
      for (int j = 0; j < r; ++j) {
        const auto& q = s.exact_basis().at(i, j);
        row.push_back(part == 0 ? q.rational_part() : q.irrational_part());
      }
      a.push_back(std::move(row));
    }
  }
  return a;
}

std::vector<std::int64_t> integer_kernel_vector(const LatticeScheme& s) {
  const int r = s.rank();
  Echelon e = reduce(physical_rational_system(s), r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(r), false);
  for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  int free_col = 0;
  while (free_col < r && is_pivot[static_cast<std::size_t>(free_col)]) ++free_col;
  std::vector<Rational> x(static_cast<std::size_t>(r), Rational(0));
  x[static_cast<std::size_t>(free_col)] = Rational(1);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    x[static_cast<std::size_t>(e.pivot_cols[i])] = -e.rows[i][static_cast<std::size_t>(free_col)];
  }
  std::int64_t lcm = 1;
  for (const auto& v : x) lcm = std::lcm(lcm, v.den());
  std::vector<std::int64_t> n;
  for (const auto& v : x) n.push_back((v * Rational(lcm)).num());
  std::int64_t g = 0;
  for (auto v : n) g = std::gcd(g, v);
  for (auto& v : n) v /= g;
  auto first = std::find_if(n.begin(), n.end(), [](std::int64_t v) { return v != 0; });
  if (first != n.end() && *first < 0) {
    for (auto& v : n) v = -v;
  }
  return n;
}

double min_positive_gap(std::vector<Vec> pts, int dim) {
  std::sort(pts.begin(), pts.end());
  double best = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j][0] - pts[i][0] >= best) break;
      Vec d = pts[j] - pts[i];
      for (int k = dim; k < kMaxDim; ++k) d[k] = 0.0;
      double g = norm(d);
      if (g > 1e-12) best = std::min(best, g);
    }
  }
  return best;
}

}  // namespace

// ------------------------------------------------------------- LatticeScheme

LatticeScheme LatticeScheme::make_float(int d, int m, const std::vector<std::vector<double>>& rows, double tol) {
  const int r = d + m;
  if (d < 1 || d > kMaxDim || m < 0 || m > kMaxDim) {
    throw Error(ErrorCode::UnsupportedDimension, "need 1 <= d <= 3 and 0 <= m <= 3");
  }
  if (static_cast<int>(rows.size()) != r) throw Error(ErrorCode::InvalidArgument, "basis must have d+m rows");
  LatticeScheme s;
  s.d_ = d;
  s.m_ = m;
  s.tol_ = tol;
  s.mode_ = ArithmeticMode::Float;
  s.map_.rank = r;
  Eigen::MatrixXd b(r, r);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != r) {
      throw Error(ErrorCode::InvalidArgument, "basis must be square");
    }
    for (int j = 0; j < r; ++j) {
      b(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      s.map_.m[static_cast<std::size_t>(i * kMaxRank + j)] = b(i, j);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  s.det_ = lu.determinant();
  if (!(std::fabs(s.det_) > tol)) {
    throw Error(ErrorCode::SingularBasis, "|det| = " + std::to_string(std::fabs(s.det_)) + " below tolerance");
  }
  Eigen::MatrixXd inv = lu.inverse();
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) s.map_.inv[static_cast<std::size_t>(i * kMaxRank + j)] = inv(i, j);
  }
  s.finish_float();
  return s;
}

LatticeScheme LatticeScheme::make_exact(int d, int m, const std::vector<std::vector<QuadraticNumber>>& rows,
                                        std::int64_t radicand) {
  const int r = d + m;
  if (d < 1 || d > kMaxDim || m < 0 || m > kMaxDim) {
    throw Error(ErrorCode::UnsupportedDimension, "need 1 <= d <= 3 and 0 <= m <= 3");
  }
  if (static_cast<int>(rows.size()) != r) throw Error(ErrorCode::InvalidArgument, "basis must have d+m rows");
  LatticeScheme s;
  s.d_ = d;
  s.m_ = m;
  s.tol_ = 0.0;
  s.mode_ = ArithmeticMode::QuadraticExact;
  s.radicand_ = radicand;
  s.map_.rank = r;
  s.exact_basis_.size = r;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != r) throw Error(ErrorCode::InvalidArgument, "basis must be square");
    for (const auto& q : row) {
      if (q.radicand() != 0 && q.radicand() != radicand) {
        throw Error(ErrorCode::InvalidArgument, "basis entry uses a different radicand");
      }
      s.exact_basis_.data.push_back(q);
    }
  }
  // Gauss-Jordan over Q(sqrt D).
  ExactMatrix a = s.exact_basis_;
  ExactMatrix inv{r, std::vector<QuadraticNumber>(static_cast<std::size_t>(r * r))};
  for (int i = 0; i < r; ++i) inv.at(i, i) = QuadraticNumber(1);
  QuadraticNumber det(1);
  for (int c = 0; c < r; ++c) {
    int p = c;
    while (p < r && a.at(p, c).is_zero()) ++p;
    if (p == r) throw Error(ErrorCode::SingularBasis, "det = 0 (exact)");
    if (p != c) {
      for (int k = 0; k < r; ++k) {
        std::swap(a.at(p, k), a.at(c, k));
        std::swap(inv.at(p, k), inv.at(c, k));
      }
      det = -det;
    }
    QuadraticNumber pivot = a.at(c, c);
    det *= pivot;
    for (int k = 0; k < r; ++k) {
      a.at(c, k) /= pivot;
      inv.at(c, k) /= pivot;
    }
    for (int i = 0; i < r; ++i) {
      if (i == c || a.at(i, c).is_zero()) continue;
      QuadraticNumber f = a.at(i, c);
      for (int k = 0; k < r; ++k) {
        a.at(i, k) -= f * a.at(c, k);
        inv.at(i, k) -= f * inv.at(c, k);
      }
    }
  }
  s.exact_inverse_ = std::move(inv);
  s.det_ = det.to_double();
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      s.map_.m[static_cast<std::size_t>(i * kMaxRank + j)] = s.exact_basis_.at(i, j).to_double();
      s.map_.inv[static_cast<std::size_t>(i * kMaxRank + j)] = s.exact_inverse_.at(i, j).to_double();
    }
  }
  s.finish_float();
  return s;
}

void LatticeScheme::finish_float() {
  const int r = rank();
  dual_.rank = r;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      dual_.m[static_cast<std::size_t>(i * kMaxRank + j)] = map_.inv_at(j, i);
      dual_.inv[static_cast<std::size_t>(i * kMaxRank + j)] = map_.at(j, i);
    }
  }
}

Vec LatticeScheme::physical(const IndexVec& n) const {
  Vec x{};
  for (int i = 0; i < d_; ++i) {
    double s = 0.0;
    for (int j = 0; j < rank(); ++j) s += map_.at(i, j) * static_cast<double>(n[static_cast<std::size_t>(j)]);
    x[static_cast<std::size_t>(i)] = s;
  }
  return x;
}

Vec LatticeScheme::star(const IndexVec& n) const {
  Vec h{};
  for (int i = 0; i < m_; ++i) {
    double s = 0.0;
    for (int j = 0; j < rank(); ++j) s += map_.at(d_ + i, j) * static_cast<double>(n[static_cast<std::size_t>(j)]);
    h[static_cast<std::size_t>(i)] = s;
  }
  return h;
}

LatticePoint LatticeScheme::point(const IndexVec& n) const { return {n, physical(n), star(n)}; }

const ExactMatrix& LatticeScheme::exact_basis() const {
  if (!is_exact()) throw Error(ErrorCode::InvalidArgument, "scheme is not in QuadraticExact mode");
  return exact_basis_;
}

const ExactMatrix& LatticeScheme::exact_inverse() const {
  if (!is_exact()) throw Error(ErrorCode::InvalidArgument, "scheme is not in QuadraticExact mode");
  return exact_inverse_;
}

ExactVec LatticeScheme::exact_image(const IndexVec& n) const {
  const auto& b = exact_basis();
  ExactVec out(static_cast<std::size_t>(rank()));
  for (int i = 0; i < rank(); ++i) {
    QuadraticNumber s;
    for (int j = 0; j < rank(); ++j) {
      auto nj = n[static_cast<std::size_t>(j)];
      if (nj != 0) s += b.at(i, j) * QuadraticNumber(nj);
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

ExactVec LatticeScheme::exact_physical(const IndexVec& n) const {
  ExactVec v = exact_image(n);
  v.resize(static_cast<std::size_t>(d_));
  return v;
}

ExactVec LatticeScheme::exact_star(const IndexVec& n) const {
  const auto& b = exact_basis();
  ExactVec out(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) {
    QuadraticNumber s;
    for (int j = 0; j < rank(); ++j) {
      auto nj = n[static_cast<std::size_t>(j)];
      if (nj != 0) s += b.at(d_ + i, j) * QuadraticNumber(nj);
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

std::array<double, kMaxRank> LatticeScheme::coordinates(const std::array<double, kMaxRank>& v) const {
  std::array<double, kMaxRank> c{};
  for (int i = 0; i < rank(); ++i) {
    double s = 0.0;
    for (int j = 0; j < rank(); ++j) s += map_.inv_at(i, j) * v[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(i)] = s;
  }
  return c;
}

ExactVec LatticeScheme::exact_coordinates(const ExactVec& v) const {
  const auto& inv = exact_inverse();
  ExactVec c(static_cast<std::size_t>(rank()));
  for (int i = 0; i < rank(); ++i) {
    QuadraticNumber s;
    for (int j = 0; j < rank(); ++j) s += inv.at(i, j) * v.at(static_cast<std::size_t>(j));
    c[static_cast<std::size_t>(i)] = s;
  }
  return c;
}

std::array<double, kMaxRank> LatticeScheme::apply(const std::array<double, kMaxRank>& c) const {
  std::array<double, kMaxRank> v{};
  for (int i = 0; i < rank(); ++i) {
    double s = 0.0;
    for (int j = 0; j < rank(); ++j) s += map_.at(i, j) * c[static_cast<std::size_t>(j)];
    v[static_cast<std::size_t>(i)] = s;
  }
  return v;
}

ExactVec LatticeScheme::exact_apply(const ExactVec& c) const {
  const auto& b = exact_basis();
  ExactVec v(static_cast<std::size_t>(rank()));
  for (int i = 0; i < rank(); ++i) {
    QuadraticNumber s;
    for (int j = 0; j < rank(); ++j) s += b.at(i, j) * c.at(static_cast<std::size_t>(j));
    v[static_cast<std::size_t>(i)] = s;
  }
  return v;
}

// ---------------------------------------------------------------- operations

ValidationReport validate_scheme(const LatticeScheme& scheme) {
  ValidationReport rep;
  rep.determinant = scheme.determinant();
  rep.covolume = scheme.covolume();
  const int r = scheme.rank();

  if (scheme.is_exact()) {
    rep.injectivity_exact = true;
    Echelon e = reduce(physical_rational_system(scheme), r);
    if (static_cast<int>(e.pivot_cols.size()) < r) {
      auto w = integer_kernel_vector(scheme);
      std::string text;
      for (auto v : w) text += (text.empty() ? "" : ",") + std::to_string(v);
      throw InjectivityViolation(w, "physical projection vanishes on n = (" + text + ")");
    }
  } else {
    rep.injectivity_advisory = true;
    rep.warnings.push_back("injectivity checked for |n|_inf <= 8 only");
    constexpr int kScan = 8;
    for (int radius = 1; radius <= kScan; ++radius) {
      IndexVec n{};
      for (int j = 0; j < r; ++j) n[static_cast<std::size_t>(j)] = -radius;
      while (true) {
        std::int64_t inf = 0;
        for (int j = 0; j < r; ++j) inf = std::max<std::int64_t>(inf, std::llabs(n[static_cast<std::size_t>(j)]));
        auto first = std::find_if(n.begin(), n.begin() + r, [](std::int64_t v) { return v != 0; });
        if (inf == radius && first != n.begin() + r && *first > 0) {
          double scale = std::max(1.0, static_cast<double>(inf));
          if (norm(scheme.physical(n)) <= scheme.tol() * scale) {
            std::vector<std::int64_t> w(n.begin(), n.begin() + r);
            std::string text;
            for (auto v : w) text += (text.empty() ? "" : ",") + std::to_string(v);
            throw InjectivityViolation(w, "physical projection vanishes on n = (" + text + ")");
          }
        }
        int j = r - 1;
        while (j >= 0 && n[static_cast<std::size_t>(j)] == radius) {
          n[static_cast<std::size_t>(j)] = -radius;
          --j;
        }
        if (j < 0) break;
        ++n[static_cast<std::size_t>(j)];
      }
    }
  }

  if (scheme.internal_dim() > 0) {
    for (double target : {100.0, 1000.0, 10000.0}) {
      auto half = static_cast<std::int64_t>(std::floor((std::pow(target, 1.0 / r) - 1.0) / 2.0));
      half = std::max<std::int64_t>(half, 1);
      std::vector<Vec> stars;
      IndexVec n{};
      for (int j = 0; j < r; ++j) n[static_cast<std::size_t>(j)] = -half;
      while (true) {
        stars.push_back(scheme.star(n));
        int j = r - 1;
        while (j >= 0 && n[static_cast<std::size_t>(j)] == half) {
          n[static_cast<std::size_t>(j)] = -half;
          --j;
        }
        if (j < 0) break;
        ++n[static_cast<std::size_t>(j)];
      }
      rep.denseness.push_back({stars.size(), min_positive_gap(std::move(stars), scheme.internal_dim())});
    }
    const auto& dn = rep.denseness;
    if (dn.size() >= 2 && !(dn.back().min_gap < dn.front().min_gap)) {
      rep.warnings.push_back("star-image gaps do not shrink with sample size; internal projection may not be dense");
    }
  }
  return rep;
}

Vec star_map(const LatticeScheme& scheme, const IndexVec& index) { return scheme.star(index); }

std::optional<IndexVec> locate_in_lattice(const LatticeScheme& scheme, const ExactVec& physical) {
  const int r = scheme.rank();
  const int d = scheme.physical_dim();
  RationalMatrix a = physical_rational_system(scheme);
  for (int part = 0; part < 2; ++part) {
    for (int i = 0; i < d; ++i) {
      const auto& x = physical.at(static_cast<std::size_t>(i));
      if (x.radicand() != 0 && x.radicand() != scheme.radicand()) return std::nullopt;
      a[static_cast<std::size_t>(part * d + i)].push_back(part == 0 ? x.rational_part() : x.irrational_part());
    }
  }
  Echelon e = reduce(std::move(a), r + 1);
  if (static_cast<int>(e.pivot_cols.size()) < r) {
    throw Error(ErrorCode::InjectivityViolation, "physical projection is not injective on the lattice");
  }
  // A pivot in the augmented column means the system is inconsistent.
  if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), r) != e.pivot_cols.end()) return std::nullopt;
  IndexVec n{};
  for (int i = 0; i < r; ++i) {
    const Rational& v = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
    if (!v.is_integer()) return std::nullopt;
    n[static_cast<std::size_t>(e.pivot_cols[static_cast<std::size_t>(i)])] = v.num();
  }
  return n;
}

namespace {

bool accepts_star(const LatticeScheme& scheme, const WindowSpec& window, const IndexVec& n, const Vec& star,
                  bool exact) {
  if (window.dim() == 0) return true;
  if (!exact) return member(window, star);
  if (std::fabs(boundary_distance(window, star)) > 1e-6) return member(window, star);
  return member_exact(window, scheme.exact_star(n), star);
}

}  // namespace

IndexedPointSet enumerate_cut(const LatticeScheme& scheme, const WindowSpec& window, const Box& region,
                              const EnumerateOptions& options) {
  const int d = scheme.physical_dim();
  const int m = scheme.internal_dim();
  if (window.dim() != m) throw Error(ErrorCode::InvalidArgument, "window dimension differs from internal dimension");
  if (region.dim != d) throw Error(ErrorCode::InvalidArgument, "region dimension differs from physical dimension");
  if (region.empty()) throw Error(ErrorCode::InvalidArgument, "empty region");
  std::array<double, kMaxRank> lo{};
  std::array<double, kMaxRank> hi{};
  for (int i = 0; i < d; ++i) {
    lo[static_cast<std::size_t>(i)] = region.lo[static_cast<std::size_t>(i)];
    hi[static_cast<std::size_t>(i)] = region.hi[static_cast<std::size_t>(i)];
  }
  Box wb = window.bounding_box();
  for (int i = 0; i < m; ++i) {
    lo[static_cast<std::size_t>(d + i)] = wb.lo[static_cast<std::size_t>(i)] - window.tol();
    hi[static_cast<std::size_t>(d + i)] = wb.hi[static_cast<std::size_t>(i)] + window.tol();
  }
  const bool exact = scheme.is_exact() && window.is_exact();
  IndexedPointSet out;
  out.dim = d;
  out.region = region;
  out.scheme = std::make_shared<const LatticeScheme>(scheme);
  for_each_index_in_box(scheme.map(), lo, hi, options.budget, [&](const IndexVec& n) {
    Vec x = scheme.physical(n);
    if (!region.contains(x)) return;
    Vec h = scheme.star(n);
    if (!accepts_star(scheme, window, n, h, exact)) return;
    out.physical.push_back(x);
    out.index.push_back(n);
    out.star.push_back(h);
  });
  out.sort();
  return out;
}

double model_density(const LatticeScheme& scheme, const WindowSpec& window) {
  return measure(window) * scheme.lattice_density();
}

std::vector<DualCandidate> dual_candidates(const LatticeScheme& scheme, double k_max, double internal_max) {
  if (internal_max < 0) internal_max = k_max;
  const int d = scheme.physical_dim();
  const int m = scheme.internal_dim();
  std::array<double, kMaxRank> lo{};
  std::array<double, kMaxRank> hi{};
  for (int i = 0; i < d; ++i) {
    lo[static_cast<std::size_t>(i)] = -k_max;
    hi[static_cast<std::size_t>(i)] = k_max;
  }
  for (int i = 0; i < m; ++i) {
    lo[static_cast<std::size_t>(d + i)] = -internal_max;
    hi[static_cast<std::size_t>(d + i)] = internal_max;
  }
  std::vector<DualCandidate> out;
  const LinearMap& dual = scheme.dual_map();
  for_each_index_in_box(dual, lo, hi, 1e8, [&](const IndexVec& n) {
    DualCandidate c;
    c.dual_index = n;
    for (int i = 0; i < d + m; ++i) {
      double s = 0.0;
      for (int j = 0; j < d + m; ++j) s += dual.at(i, j) * static_cast<double>(n[static_cast<std::size_t>(j)]);
      if (i < d) {
        c.k[static_cast<std::size_t>(i)] = s;
      } else {
        c.k_internal[static_cast<std::size_t>(i - d)] = s;
      }
    }
    if (norm(c.k) <= k_max + 1e-12 && norm(c.k_internal) <= internal_max + 1e-12) out.push_back(c);
  });
  std::sort(out.begin(), out.end(), [](const DualCandidate& a, const DualCandidate& b) {
    double na = norm(a.k);
    double nb = norm(b.k);
    if (std::fabs(na - nb) > 1e-12) return na < nb;
    return a.k < b.k;
  });
  return out;
}

}  // namespace modelset
