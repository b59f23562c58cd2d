#include <doctest.h>

#include <cmath>

#include "modelset/spectral.hpp"
#include "modelset/torus.hpp"
#include "oracles.hpp"
#include "patches.hpp"

using namespace modelset;

TEST_CASE("weyl sum at zero is the density estimate") {
  const auto& p = patches::fib_large();
  auto boxes = patches::boxes_1d({1000, 4000});
  auto s = weyl_sum(p, Vec{}, boxes);
  auto xs = oracle::coords(p);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    double n = boxes.sizes[i];
    CHECK(s[i].real() == doctest::Approx(static_cast<double>(restrict_to(p, boxes.box(i)).size()) / (2 * n)));
    CHECK(s[i].imag() == 0.0);
  }
}

TEST_CASE("weyl sum agrees with a long double direct sum") {
  const auto& p = patches::fib_large();
  auto xs = oracle::coords(p);
  auto boxes = patches::boxes_1d({1000});
  for (double k : {0.4472135955, 0.7236067977, 1.3, 2.2360679775}) {
    auto s = weyl_sum(p, {k, 0, 0}, boxes)[0];
    auto ref = oracle::weyl(xs, k, 1000);
    CHECK(std::abs(s - std::complex<double>(ref)) < 1e-9);
  }
}

TEST_CASE("integers interfere constructively at integer k") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -4100, 4100));
  auto s = weyl_sum(z, {1, 0, 0}, patches::boxes_1d({1000, 4000}));
  CHECK(std::abs(s.back()) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fibonacci amplitudes converge at the first dual frequency") {
  auto cands = dual_candidates(*patches::fibonacci(), 1.0);
  REQUIRE(cands.size() > 1);
  auto s = weyl_sum(patches::fib_large(), cands[1].k, patches::boxes_1d({2000, 4000}));
  CHECK(std::fabs(std::abs(s[1]) - std::abs(s[0])) / std::abs(s[1]) < 0.05);
}

TEST_CASE("integer diffraction") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -1100, 1100));
  auto t = diffraction_table(z, *patches::crystal(1), 3.0, 10, 5, patches::boxes_1d({1000}));
  REQUIRE(t.entries.size() == 7);
  for (const auto& e : t.entries) {
    CHECK(e.k[0] == std::round(e.k[0]));
    CHECK(e.intensity == doctest::Approx(1.0).epsilon(0.01));
  }
  CHECK(t.controls.size() == 10);
  CHECK(t.max_control < 0.05);
  for (const auto& c : t.controls) {
    CHECK(c.is_control);
    CHECK(norm(c.k) >= 0.75 - 1e-12);
    CHECK(norm(c.k) <= 3.0);
  }
}

TEST_CASE("fibonacci diffraction is stable and controls decay") {
  auto t = diffraction_table(patches::fib_large(), *patches::fibonacci(), 2.0, 10, 42,
                             patches::boxes_1d({1000, 4000}));
  double eta0 = t.entries.front().amplitude_by_box.back().real();
  for (const auto& e : t.entries) {
    if (e.intensity < 0.01 * eta0 * eta0) continue;
    double a = std::norm(e.amplitude_by_box[0]);
    CHECK(std::fabs(a - e.intensity) / e.intensity < 0.05);
  }
  CHECK(t.max_control < 0.05 * eta0);
}

TEST_CASE("random fixture has no stable peak away from zero") {
  const auto& r = patches::random_patch();
  std::vector<Vec> ks;
  for (const auto& c : dual_candidates(*patches::fibonacci(), 2.0)) ks.push_back(c.k);
  auto t = diffraction_table(r, ks, 2.0, 0, 0, patches::boxes_1d({250, 1000}));
  double eta0 = t.entries.front().amplitude_by_box.back().real();
  for (std::size_t i = 1; i < t.entries.size(); ++i) CHECK(std::sqrt(t.entries[i].intensity) < 0.05 * eta0);
}

TEST_CASE("generic torus samples are non-singular in exact mode") {
  auto rep = separation_fraction(*patches::fibonacci(), fixtures::fibonacci_window(), 1000, 7, 1000);
  CHECK(rep.exact);
  CHECK(rep.samples == 1000);
  CHECK(rep.singular == 0);
  CHECK(rep.fraction == 0.0);
}

TEST_CASE("a star placed on the boundary is flagged") {
  auto s = patches::fibonacci();
  // h = tau - 1 - star(3, -2) puts the star of (3, -2) on the upper end
  IndexVec n{3, -2};
  auto h = fixtures::golden() - QuadraticNumber(1) - s->exact_star(n)[0];
  auto tp = beta_of_cut(*s, ExactVec{QuadraticNumber(0)}, ExactVec{h});
  auto hits = singularity_test(*s, fixtures::fibonacci_window(), tp, 50);
  const double x = s->physical(n)[0];
  CHECK(std::any_of(hits.begin(), hits.end(), [&](const BoundaryHit& b) { return std::fabs(b.physical[0] - x) < 1e-7; }));
}

TEST_CASE("a thickened boundary band raises the singular fraction") {
  auto s = fixtures::fibonacci_scheme();
  const double hi = (1 + std::sqrt(5.0)) / 2 - 1;
  // float path: a band of half-width b catches on average 2b (2R) / sqrt 5
  // stars per end, and the two ends differ by a star, so they are hit together
  auto frac = [&](double b) {
    auto rep = separation_fraction(s, WindowSpec::interval(-1, hi, false, true, b), 2000, 3, 20);
    CHECK_FALSE(rep.exact);
    return rep.fraction;
  };
  double a = frac(1e-3);
  double b = frac(4e-3);
  CHECK(b > a);
  CHECK(a == doctest::Approx(1 - std::exp(-2e-3 * 40 / std::sqrt(5.0))).epsilon(0.3));
  CHECK(b == doctest::Approx(1 - std::exp(-8e-3 * 40 / std::sqrt(5.0))).epsilon(0.3));
}
