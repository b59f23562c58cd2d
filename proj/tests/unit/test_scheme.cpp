#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "modelset/errors.hpp"
#include "modelset/fixtures.hpp"
#include "modelset/scheme.hpp"
#include "oracles.hpp"
#include "patches.hpp"

using namespace modelset;

TEST_CASE("fibonacci scheme is valid with covolume sqrt 5") {
  auto s = fixtures::fibonacci_scheme();
  auto rep = validate_scheme(s);
  CHECK(rep.invertible);
  CHECK(rep.injective);
  CHECK(rep.injectivity_exact);
  CHECK(rep.covolume == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  // det = tau' - tau = -sqrt 5, checked in the field
  const auto& b = s.exact_basis();
  auto det = b.at(0, 0) * b.at(1, 1) - b.at(0, 1) * b.at(1, 0);
  CHECK(det == QuadraticNumber(Rational(0), Rational(-1), 5));
  CHECK_FALSE(rep.denseness.empty());
}

TEST_CASE("identity basis is not injective") {
  auto s = LatticeScheme::make_float(1, 1, {{1, 0}, {0, 1}});
  try {
    validate_scheme(s);
    FAIL("no violation raised");
  } catch (const InjectivityViolation& e) {
    auto w = e.witness();
    REQUIRE(w.size() == 2);
    CHECK(w[0] == 0);
    CHECK(std::abs(w[1]) == 1);
  }
  auto x = LatticeScheme::make_exact(1, 1, {{1, 0}, {0, 1}}, 0);
  CHECK_THROWS_AS(validate_scheme(x), InjectivityViolation);
}

TEST_CASE("duplicated columns are singular") {
  CHECK_THROWS_AS(LatticeScheme::make_float(1, 1, {{1, 1}, {2, 2}}), Error);
  QuadraticNumber t = fixtures::golden();
  CHECK_THROWS_AS(LatticeScheme::make_exact(1, 1, {{t, t}, {1, 1}}, 5), Error);
}

TEST_CASE("star map examples") {
  auto s = fixtures::fibonacci_scheme();
  CHECK(star_map(s, IndexVec{}) == Vec{});
  CHECK(star_map(s, {1, 0}) [0] == doctest::Approx(1.0));
  CHECK(star_map(s, {0, 1})[0] == doctest::Approx(-0.6180339887));
  CHECK(s.exact_star({0, 1})[0] == fixtures::golden_conjugate());
  CHECK(s.exact_physical({0, 1})[0] == fixtures::golden());
  IndexVec a{3, -7};
  IndexVec b{-11, 4};
  CHECK(s.exact_star(a + b)[0] == s.exact_star(a)[0] + s.exact_star(b)[0]);
}

TEST_CASE("lattice location is exact") {
  auto s = fixtures::fibonacci_scheme();
  auto tau = fixtures::golden();
  auto n = locate_in_lattice(s, {QuadraticNumber(2) - QuadraticNumber(3) * tau});
  REQUIRE(n);
  CHECK((*n)[0] == 2);
  CHECK((*n)[1] == -3);
  CHECK_FALSE(locate_in_lattice(s, {QuadraticNumber(Rational(1, 2))}));
}

TEST_CASE("fibonacci cut matches a brute-force double loop") {
  auto s = fixtures::fibonacci_scheme();
  auto w = fixtures::fibonacci_window();
  auto p = enumerate_cut(s, w, Box::cube(1, 0, 100));
  oracle::Interval1 win{-1.0L, oracle::kTau - 1.0L, false, true};
  auto ref = oracle::fibonacci_cut(win, 0, 100);
  REQUIRE(p.size() == ref.size());
  std::vector<IndexVec> mine = p.index;
  std::vector<IndexVec> theirs;
  for (auto [a, b] : ref) theirs.push_back(IndexVec{a, b});
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  CHECK(mine == theirs);
  CHECK(std::is_sorted(p.physical.begin(), p.physical.end()));
  CHECK(static_cast<double>(ref.size()) / 100 == doctest::Approx(0.7236).epsilon(0.05));
}

TEST_CASE("a far window still meets the dense stars") {
  auto s = fixtures::fibonacci_scheme();
  auto p = enumerate_cut(s, WindowSpec::interval(1000, 1001), Box::cube(1, 0, 100));
  auto ref = oracle::fibonacci_cut({1000, 1001, true, false}, 0, 100);
  CHECK_FALSE(p.empty());
  CHECK(p.size() == ref.size());
}

TEST_CASE("cut is uniformly discrete") {
  auto p = enumerate_cut(fixtures::silver_mean_scheme(), WindowSpec::interval(-0.5, 0.5), Box::cube(1, -500, 500));
  CHECK(oracle::min_gap(oracle::coords(p)) > 0.5);
}

TEST_CASE("enumeration budget") {
  EnumerateOptions opt;
  opt.budget = 100;
  CHECK_THROWS_AS(enumerate_cut(fixtures::fibonacci_scheme(), fixtures::fibonacci_window(), Box::cube(1, 0, 1e4), opt),
                  Error);
}

TEST_CASE("model density") {
  auto s = fixtures::fibonacci_scheme();
  double dens = model_density(s, fixtures::fibonacci_window());
  CHECK(dens == doctest::Approx(0.72360679).epsilon(1e-8));
  auto p = enumerate_cut(s, fixtures::fibonacci_window(), Box::cube(1, 0, 1e4));
  CHECK(std::fabs(static_cast<double>(p.size()) / 1e4 - dens) / dens < 0.01);
  CHECK(model_density(s, WindowSpec::interval(0, 2)) == doctest::Approx(2 * model_density(s, WindowSpec::interval(0, 1))));
  CHECK(model_density(fixtures::integer_crystal_scheme(2), WindowSpec::whole()) == doctest::Approx(1));
  CHECK(model_density(fixtures::ammann_beenker_scheme(), fixtures::ammann_beenker_window()) ==
        doctest::Approx(2 * (1 + std::sqrt(2.0)) / 4));
}

TEST_CASE("dual candidates") {
  auto s = fixtures::fibonacci_scheme();
  auto tiny = dual_candidates(s, 0.01);
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].k == Vec{});

  auto z = dual_candidates(fixtures::integer_crystal_scheme(1), 3.5);
  REQUIRE(z.size() == 7);
  for (const auto& c : z) CHECK(c.k[0] == std::round(c.k[0]));
  CHECK(dual_candidates(fixtures::integer_crystal_scheme(2), 1.0).size() == 5);

  // B^-T for columns (1, 1), (tau, tau'): k = (m1 - tau' m0) / sqrt 5, k* = (tau m0 - m1) / sqrt 5
  const double r5 = std::sqrt(5.0);
  const double tau = (1 + r5) / 2;
  const double tc = (1 - r5) / 2;
  std::vector<double> brute;
  for (int m0 = -30; m0 <= 30; ++m0) {
    for (int m1 = -30; m1 <= 30; ++m1) {
      double k = (m1 - tc * m0) / r5;
      double ki = (tau * m0 - m1) / r5;
      if (std::fabs(k) <= 5 + 1e-12 && std::fabs(ki) <= 5 + 1e-12) brute.push_back(k);
    }
  }
  std::sort(brute.begin(), brute.end());
  auto mine = dual_candidates(s, 5.0);
  std::vector<double> ks;
  for (const auto& c : mine) ks.push_back(c.k[0]);
  std::sort(ks.begin(), ks.end());
  REQUIRE(ks.size() == brute.size());
  for (std::size_t i = 0; i < ks.size(); ++i) CHECK(ks[i] == doctest::Approx(brute[i]).epsilon(1e-12));
  for (std::size_t i = 1; i < mine.size(); ++i) CHECK(norm(mine[i - 1].k) <= norm(mine[i].k) + 1e-15);
}
