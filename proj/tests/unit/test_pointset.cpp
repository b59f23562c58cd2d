#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "modelset/diagnostics.hpp"
#include "modelset/errors.hpp"
#include "modelset/rng.hpp"
#include "oracles.hpp"
#include "patches.hpp"

using namespace modelset;

namespace {

IndexedPointSet integers(double lo, double hi) {
  return enumerate_cut(*patches::crystal(1), WindowSpec::whole(), Box::cube(1, lo, hi));
}

IndexedPointSet raw_1d(double lo, double hi, std::vector<double> xs) {
  std::vector<Vec> pts;
  for (double x : xs) pts.push_back({x, 0, 0});
  return IndexedPointSet::raw(1, Box::cube(1, lo, hi), pts);
}

}  // namespace

TEST_CASE("difference set of a single point") {
  auto d = difference_set(raw_1d(-10, 10, {0}), 5);
  REQUIRE(d.size() == 1);
  CHECK(d.physical[0] == Vec{});
}

TEST_CASE("difference set of the integers") {
  auto d = difference_set(integers(0, 100), 5);
  REQUIRE(d.size() == 11);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.physical[i][0] == doctest::Approx(-5.0 + static_cast<double>(i)));
  CHECK_THROWS_AS(difference_set(integers(0, 8), 5), Error);
}

TEST_CASE("fibonacci differences lie in the cut of W - W") {
  const auto& p = patches::fib_large();
  auto d = difference_set(restrict_to(p, Box::cube(1, -1000, 1000)), 10);
  auto ww = minkowski_difference(fixtures::fibonacci_window());
  auto ref = enumerate_cut(*patches::fibonacci(), ww, Box::cube(1, -10, 10));
  std::set<IndexVec> refs(ref.index.begin(), ref.index.end());
  std::set<IndexVec> got(d.index.begin(), d.index.end());
  CHECK(std::includes(refs.begin(), refs.end(), got.begin(), got.end()));
  // a large patch realises every difference the window allows, except the
  // two whose star falls exactly on an open end of W - W
  CHECK(got.size() + 2 >= refs.size());
  // and agrees with the brute-force pair scan
  auto xs = oracle::coords(p);
  auto brute = oracle::differences(xs, 10, -1000, 1000);
  std::set<long long> mine;
  for (const auto& v : d.physical) mine.insert(std::llround(v[0] * 1e6));
  CHECK(mine == brute);
}

TEST_CASE("packing radius") {
  CHECK(packing_radius(integers(0, 50)) == doctest::Approx(0.5));
  const auto& p = patches::fib_large();
  CHECK(packing_radius(p) == doctest::Approx(oracle::min_gap(oracle::coords(p)) / 2));
  CHECK(packing_radius(p) == doctest::Approx(0.5));
  CHECK_THROWS_AS(packing_radius(raw_1d(0, 1, {0.5})), Error);
}

TEST_CASE("cluster counts") {
  CHECK(flc_clusters(integers(0, 200), 4).clusters.size() == 1);
  const auto& p = patches::fib_large();
  auto a = flc_clusters(restrict_to(p, Box::cube(1, -500, 500)), 1.2).clusters.size();
  auto b = flc_clusters(restrict_to(p, Box::cube(1, -1000, 1000)), 1.2).clusters.size();
  CHECK(a <= 4);
  CHECK(a == b);
  const auto& r = patches::random_patch();
  auto ra = flc_clusters(restrict_to(r, Box::cube(1, -200, 200)), 3).clusters.size();
  auto rb = flc_clusters(restrict_to(r, Box::cube(1, -800, 800)), 3).clusters.size();
  CHECK(rb > ra);
}

TEST_CASE("repetition sets") {
  auto z = repetition_set(integers(0, 100), 3, {50, 0, 0});
  CHECK(z.max_gap == doctest::Approx(1.0));
  CHECK(z.matches.size() > 80);
  const auto& p = patches::fib_large();
  auto a = repetition_set(restrict_to(p, Box::cube(1, -500, 500)), 5);
  auto b = repetition_set(restrict_to(p, Box::cube(1, -1000, 1000)), 5);
  CHECK_FALSE(a.matches.empty());
  CHECK(std::isfinite(a.max_gap));
  CHECK(b.max_gap <= a.max_gap + 1e-9);
}

TEST_CASE("a defect is excluded from the repetitions of its cluster") {
  auto base = integers(0, 100);
  std::vector<Vec> pts = base.physical;
  pts.push_back({70.5, 0, 0});
  auto p = IndexedPointSet::raw(1, base.region, pts);
  auto rep = repetition_set(p, 3, {30, 0, 0});
  for (const auto& t : rep.matches) {
    double moved = 30 + t.vec[0];
    CHECK(std::fabs(moved - 70.5) > 3);
  }
  CHECK_FALSE(rep.matches.empty());
}

TEST_CASE("patch frequencies") {
  const auto& p = patches::fib_large();
  auto boxes = patches::boxes_1d({1000});
  std::vector<Vec> anchors = {{0, 0, 0}, {1500, 0, 0}};
  std::vector<Translation> single = {{{}, IndexVec{}}};
  auto f0 = patch_frequency(p, single, boxes, anchors);
  double dens = model_density(*patches::fibonacci(), fixtures::fibonacci_window());
  CHECK(f0.frequency[0][0] == doctest::Approx(dens).epsilon(0.01));

  // {0, 1}: x + 1 in the set iff x* in W cap (W - 1) = (-1, tau - 2]
  std::vector<Translation> pair = {{{}, IndexVec{}}, {{1, 0, 0}, IndexVec{1, 0}}};
  auto f = patch_frequency(p, pair, boxes, anchors);
  auto sub = enumerate_cut(*patches::fibonacci(), WindowSpec::interval(-1, (1 + std::sqrt(5.0)) / 2 - 2, false, true),
                           Box::cube(1, -1000, 1000));
  double oracle_freq = static_cast<double>(sub.size()) / 2000;
  CHECK(f.frequency[0][0] == doctest::Approx(oracle_freq).epsilon(1e-9));
  CHECK(f.spread < 0.02);
}

TEST_CASE("period candidates") {
  auto z = period_candidates(integers(-100, 100), 5);
  CHECK(z.periods.size() == 11);
  REQUIRE(z.generators.size() == 1);
  CHECK(std::fabs(z.generators[0].vec[0]) == doctest::Approx(1));
  CHECK(z.full_rank);
  auto f = period_candidates(restrict_to(patches::fib_large(), Box::cube(1, -400, 400)), 100);
  CHECK(f.periods.size() == 1);
  CHECK_FALSE(f.full_rank);
  auto z2 = enumerate_cut(*patches::crystal(2), WindowSpec::whole(), Box::cube(2, -8, 8));
  auto r2 = period_candidates(z2, 3);
  CHECK(r2.generators.size() == 2);
  CHECK(r2.full_rank);
}

TEST_CASE("local closeness") {
  const auto& p = patches::fib_large();
  auto core = restrict_to(p, Box::cube(1, -300, 300));
  auto same = lt_close(core, core, 20, 2);
  CHECK(same.close);
  CHECK(same.v.vec == Vec{});

  auto shifted = translate(core, {{0.37, 0, 0}, std::nullopt});
  auto m = lt_close(core, shifted, 20, 1);
  CHECK(m.close);
  CHECK(m.v.vec[0] == doctest::Approx(0.37));

  // snap-in: Q = -x + P with x in Delta, close at V < packing radius, must match with v = 0 on K
  Rng rng(9);
  auto d = difference_set(restrict_to(p, Box::cube(1, -1500, 1500)), 100);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 10; ++i) {
    auto j = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(d.size()) - 1));
    Translation x{-d.physical[j], -d.index[j]};
    auto q = translate(restrict_to(p, Box::cube(1, -1000, 1000)), x);
    auto r = lt_close(core, q, 10, 0.4);
    if (!r.close) continue;
    ++checked;
    CHECK(max_norm(r.v.vec) < 1e-9);
    if (r.v.index) CHECK(is_zero(*r.v.index));
    CHECK(agree_on(core, q, Box::cube(1, -10, 10)));
  }
  CHECK(checked > 0);
}
