#include "modelset/fixtures.hpp"

#include "modelset/rng.hpp"

namespace modelset::fixtures {

namespace {

QuadraticNumber q(std::int64_t a_num, std::int64_t a_den, std::int64_t b_num, std::int64_t b_den, std::int64_t d) {
  return QuadraticNumber(Rational(a_num, a_den), Rational(b_num, b_den), d);
}

}  // namespace

QuadraticNumber golden() { return q(1, 2, 1, 2, 5); }
QuadraticNumber golden_conjugate() { return q(1, 2, -1, 2, 5); }

LatticeScheme fibonacci_scheme() {
  return LatticeScheme::make_exact(1, 1, {{QuadraticNumber(1), golden()}, {QuadraticNumber(1), golden_conjugate()}}, 5);
}

WindowSpec fibonacci_window() {
  return WindowSpec::exact_interval(QuadraticNumber(-1), golden() - QuadraticNumber(1), false, true);
}

WindowSpec fibonacci_generic_window() {
  QuadraticNumber shift(Rational(1, 10));
  return WindowSpec::exact_interval(QuadraticNumber(-1) - shift, golden() - QuadraticNumber(1) - shift, false, true);
}

LatticeScheme silver_mean_scheme() {
  return LatticeScheme::make_exact(1, 1, {{QuadraticNumber(1), q(1, 1, 1, 1, 2)}, {QuadraticNumber(1), q(1, 1, -1, 1, 2)}},
                                   2);
}

WindowSpec silver_mean_window() { return WindowSpec::exact_interval(q(0, 1, -1, 2, 2), q(0, 1, 1, 2, 2), true, false); }

LatticeScheme ammann_beenker_scheme() {
  QuadraticNumber z(0);
  QuadraticNumber one(1);
  QuadraticNumber h = q(0, 1, 1, 2, 2);  // sqrt(2)/2
  return LatticeScheme::make_exact(2, 2,
                                   {{one, h, z, -h},   // x
                                    {z, h, one, h},    // y
                                    {one, -h, z, h},   // internal x
                                    {z, h, -one, h}},  // internal y
                                   2);
}

WindowSpec ammann_beenker_window() {
  QuadraticNumber a(Rational(1, 2));
  QuadraticNumber b = q(1, 2, 1, 2, 2);
  return WindowSpec::exact_polygon({{b, -a}, {b, a}, {a, b}, {-a, b}, {-b, a}, {-b, -a}, {-a, -b}, {a, -b}}, true);
}

LatticeScheme integer_crystal_scheme(int d) {
  std::vector<std::vector<QuadraticNumber>> rows(static_cast<std::size_t>(d),
                                                  std::vector<QuadraticNumber>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = QuadraticNumber(1);
  return LatticeScheme::make_exact(d, 0, rows, 0);
}

IndexedPointSet random_fixture(double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> pts;
  for (double x = lo + rng.uniform(); x <= hi; x += rng.uniform(0.5, 1.5)) pts.push_back({x, 0.0, 0.0});
  return IndexedPointSet::raw(1, Box::cube(1, lo, hi), std::move(pts));
}

}  // namespace modelset::fixtures
