#include <doctest.h>

#include <cmath>

#include "modelset/autocorr.hpp"
#include "modelset/errors.hpp"
#include "oracles.hpp"
#include "patches.hpp"

using namespace modelset;

namespace {

Translation lattice(const LatticeScheme& s, IndexVec n) { return {s.physical(n), n}; }

}  // namespace

TEST_CASE("integer autocorrelation is flat") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -200, 200));
  auto t = eta_table(z, 5, patches::boxes_1d({50, 100}));
  IndexVec three{3};
  // closed boxes [-n, n] hold 2n + 1 integers
  CHECK(t.eta_at({{3, 0, 0}, three}) == doctest::Approx(201.0 / 200));
  CHECK(t.eta_zero() == doctest::Approx(201.0 / 200));
  CHECK(t.deltas.size() == 11);
}

TEST_CASE("fibonacci eta(0) is the density") {
  auto s = patches::fibonacci();
  auto p = enumerate_cut(*s, fixtures::fibonacci_window(), Box::cube(1, -10020, 10020));
  auto t = eta_table(p, 10, patches::boxes_1d({1000, 10000}));
  const double dens = (1 + std::sqrt(5.0)) / 2 / std::sqrt(5.0);
  CHECK(std::fabs(t.eta_zero() - dens) / dens < 0.01);
  // against the brute-force count
  auto xs = oracle::coords(p);
  IndexVec one{0, 1};
  double delta = s->physical(one)[0];
  CHECK(t.eta_at(lattice(*s, one)) == doctest::Approx(oracle::eta(xs, delta, 10000)).epsilon(1e-12));
  // not a difference
  CHECK_FALSE(t.find({{0.5, 0, 0}, std::nullopt}));
  CHECK(t.eta_at({{0.5, 0, 0}, std::nullopt}) == 0.0);
  CHECK_THROWS_AS(eta_table(p, 100, patches::boxes_1d({10000})), Error);
}

TEST_CASE("pairwise d") {
  auto s = patches::fibonacci();
  const auto& p = patches::fib_large();
  auto boxes = VanHoveSequence::default_1d();
  auto t = eta_table(p, 50, boxes);
  auto a = lattice(*s, {2, -1});
  CHECK(pairwise_d(t, a, a) == 0.0);
  CHECK(pairwise_d(t, {{0.25, 0, 0}, std::nullopt}, {}) == doctest::Approx(2 * t.eta_zero()));
  auto xs = oracle::coords(p);
  for (IndexVec n : {IndexVec{1, 0}, IndexVec{0, 1}, IndexVec{-3, 2}, IndexVec{5, -3}, IndexVec{13, -8}}) {
    auto tr = lattice(*s, n);
    auto moved = oracle::coords(translate(p, tr));
    double direct = oracle::symdiff(moved, xs, 4000);
    double d = pairwise_d(t, tr, {});
    CHECK(std::fabs(d - direct) / direct < 0.02);
    CHECK(std::fabs(d - predicted_d(*s, fixtures::fibonacci_window(), n)) / d < 0.02);
  }
}

TEST_CASE("symmetric difference density") {
  const auto& p = patches::fib_large();
  auto boxes = patches::boxes_1d({500, 1000});
  CHECK(symdiff_density(p, p, boxes).per_box == std::vector<double>{0, 0});
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -1200, 1200));
  auto half = translate(z, {{0.5, 0, 0}, std::nullopt});
  CHECK(symdiff_density(z, half, boxes).upper == doctest::Approx(2.0).epsilon(0.002));
  auto s = patches::fibonacci();
  auto a = translate(p, lattice(*s, {1, 0}));
  auto b = translate(p, lattice(*s, {0, 1}));
  auto c = translate(p, lattice(*s, {-2, 3}));
  double ab = symdiff_density(a, b, boxes).per_box.back();
  double ac = symdiff_density(a, c, boxes).per_box.back();
  double cb = symdiff_density(c, b, boxes).per_box.back();
  CHECK(ab <= ac + cb + 1e-12);
  CHECK_THROWS_AS(symdiff_density(restrict_to(p, Box::cube(1, -100, 100)), p, boxes), Error);
}

TEST_CASE("almost periods") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -1200, 1200));
  auto zt = eta_table(z, 50, patches::boxes_1d({500, 1000}));
  for (double f : {0.1, 0.5}) {
    auto ap = almost_periods(zt, f * 2 * zt.eta_zero());
    CHECK(ap.members.size() == 101);
    CHECK(ap.max_gap == doctest::Approx(1.0));
  }
  const auto& p = patches::fib_large();
  auto t = eta_table(p, 100, VanHoveSequence::default_1d());
  auto small = almost_periods(t, 0.1 * 2 * t.eta_zero());
  auto big = almost_periods(t, 0.4 * 2 * t.eta_zero());
  CHECK(small.members.size() > 1);
  CHECK(std::isfinite(small.max_gap));
  std::set<IndexVec> bigset;
  for (const auto& m : big.members) bigset.insert(*m.delta.index);
  for (const auto& m : small.members) CHECK(bigset.count(*m.delta.index) == 1);
  auto half = eta_table(p, 50, VanHoveSequence::default_1d());
  CHECK(almost_periods(half, 0.2 * 2 * half.eta_zero()).max_gap ==
        doctest::Approx(almost_periods(t, 0.2 * 2 * t.eta_zero()).max_gap));
  CHECK_THROWS_AS(almost_periods(t, 0), Error);
  CHECK_THROWS_AS(almost_periods(t, 2 * t.eta_zero()), Error);
}

TEST_CASE("predicted d") {
  auto s = patches::fibonacci();
  auto w = fixtures::fibonacci_window();
  CHECK(predicted_d(*s, w, IndexVec{}) == 0.0);
  // |t*| = |3 - 5 tau'| > diam W
  double far = predicted_d(*s, w, IndexVec{3, -5});
  CHECK(far == doctest::Approx(2 * model_density(*s, w)));
  const double tau = (1 + std::sqrt(5.0)) / 2;
  for (IndexVec n : {IndexVec{1, 0}, IndexVec{0, 1}, IndexVec{-1, 1}, IndexVec{2, -1}}) {
    double shift = s->star(n)[0];
    double expect = oracle::interval_symdiff(tau, shift) / std::sqrt(5.0);
    CHECK(predicted_d(*s, w, n) == doctest::Approx(expect).epsilon(1e-12));
  }
  auto t = fixtures::golden() + QuadraticNumber(2);
  CHECK(predicted_d(*s, w, ExactVec{t}) == doctest::Approx(predicted_d(*s, w, IndexVec{2, 1})));
  CHECK_THROWS_AS(predicted_d(*s, w, ExactVec{QuadraticNumber(Rational(1, 3))}), Error);
}

TEST_CASE("mACT closeness") {
  const auto& p = patches::fib_large();
  auto boxes = patches::boxes_1d({500, 1000, 2000});
  auto same = mact_close(p, p, 5, 0.01, boxes);
  CHECK(same.close);
  CHECK(same.v.vec == Vec{});

  auto s = patches::fibonacci();
  auto t = eta_table(p, 50, boxes);
  double eps = 0.2 * 2 * t.eta_zero();
  auto ap = almost_periods(t, eps);
  REQUIRE(ap.members.size() > 2);
  const auto& member = ap.members.back().delta;
  auto q = translate(p, member);
  auto r = mact_close(p, q, 60, eps, boxes);
  CHECK(r.close);
  CHECK(r.best_d < eps);

  // -W is W + (2 - tau), the star of (1, 1), so the mirror image is a translate by 1 + tau
  auto reflected = reflect(p);
  CHECK_FALSE(mact_close(p, reflected, 1, 0.05, boxes).close);
  auto f = mact_close(p, reflected, 3, 0.05, boxes);
  CHECK(f.close);
  CHECK(std::fabs(f.v.vec[0]) == doctest::Approx((3 + std::sqrt(5.0)) / 2));
}
