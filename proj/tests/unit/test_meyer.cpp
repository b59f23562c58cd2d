#include <doctest.h>

#include <cmath>

#include "modelset/errors.hpp"
#include "modelset/meyer.hpp"
#include "modelset/rng.hpp"
#include "oracles.hpp"
#include "patches.hpp"

using namespace modelset;

TEST_CASE("generator norm") {
  CHECK(generator_norm(IndexVec{}) == 0);
  CHECK(generator_norm(IndexVec{1}) == 1);
  CHECK(generator_norm(IndexVec{2, -3}) == 5);
  auto s = patches::fibonacci();
  CHECK(generator_norm(*s, s->exact_physical({2, -3})) == 5);
  CHECK_THROWS_AS(generator_norm(*s, ExactVec{QuadraticNumber(Rational(1, 2))}), Error);
}

TEST_CASE("M1 cover") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -500, 500));
  auto rz = m1_cover(z, 50);
  REQUIRE(rz.cover.size() == 1);
  CHECK(rz.cover[0].vec == Vec{});
  CHECK(rz.stable);

  auto rf = m1_cover(restrict_to(patches::fib_large(), Box::cube(1, -1000, 1000)), 50);
  CHECK(rf.card_r == rf.card_2r);
  CHECK(rf.stable);

  auto rr = m1_cover(restrict_to(patches::random_patch(), Box::cube(1, -1000, 1000)), 50);
  CHECK(rr.card_2r > rr.card_r);
  CHECK_FALSE(rr.stable);
}

TEST_CASE("weak uniform discreteness") {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -200, 200));
  auto wz = weak_ud_bound(z, 2, std::vector<Vec>{{0, 0, 0}});
  CHECK(wz.max == 5);

  Rng rng(6);
  std::vector<Vec> anchors;
  for (int i = 0; i < 100; ++i) anchors.push_back({rng.uniform(-30, 30), 0, 0});
  auto fib = restrict_to(patches::fib_large(), Box::cube(1, -500, 500));
  auto wf = weak_ud_bound(fib, 2, anchors);
  auto brute = oracle::differences(oracle::coords(fib), 40, -500, 500);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    auto lo = std::llround((anchors[i][0] - 2) * 1e6), hi = std::llround((anchors[i][0] + 2) * 1e6);
    auto n = std::distance(brute.lower_bound(lo - 1), brute.upper_bound(hi + 1));
    CHECK(wf.counts[i] == static_cast<std::size_t>(n));
  }
  // closed boxes of width 4 see between 4 and 7 differences
  CHECK(wf.max - wf.min <= 3);
  CHECK(wf.max <= 7);

  auto wr = weak_ud_bound(restrict_to(patches::random_patch(), Box::cube(1, -500, 500)), 2, anchors);
  CHECK(wr.max - wr.min > 2 * (wf.max - wf.min));
}

TEST_CASE("stepping-stone certificates") {
  auto p = restrict_to(patches::fib_large(), Box::cube(1, -2000, 2000));
  auto k = meyer_constants(p, 1000, 200, 1);
  CHECK(k.m > 0);
  CHECK(k.big_m > 0);

  auto pool = restrict_to(p, Box::cube(1, 0, 500));
  auto x = pool.index[pool.size() / 2];
  auto same = stepping_certificate(p, x, x, k);
  CHECK(same.valid);
  CHECK(same.f_norm <= same.f_bound);

  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    auto a = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
    auto b = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
    auto c = stepping_certificate(p, a, b, k);
    CHECK(c.valid);
    CHECK(c.f_norm <= 2 * c.m * static_cast<std::int64_t>(c.big_m));
    CHECK(c.distinct_differences <= c.big_m);
  }
}

TEST_CASE("a pair beyond the patch fails with its step") {
  auto p = restrict_to(patches::fib_large(), Box::cube(1, -600, 600));
  auto k = meyer_constants(p, 400, 50, 2);
  // x sits within K of the region edge, so the first step has no room
  REQUIRE(p.physical.back()[0] > 600 - k.half_width);
  auto x = p.index.back();
  auto y = restrict_to(p, Box::cube(1, 300, 310)).index[0];
  try {
    stepping_certificate(p, x, y, k);
    FAIL("no chain failure");
  } catch (const ChainFailure& e) {
    CHECK(e.code() == ErrorCode::ChainFailure);
    (void)e.step();
  }
}
