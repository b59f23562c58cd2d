#include <doctest.h>

#include <cmath>

#include "modelset/errors.hpp"
#include "modelset/fixtures.hpp"
#include "modelset/quadratic.hpp"
#include "modelset/rng.hpp"

using namespace modelset;

TEST_CASE("rational normalises and parses") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational::parse("-3/2") == Rational(-3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational::from_double(0.375) == Rational(3, 8));
  CHECK_THROWS_AS(Rational::from_double(0.1), Error);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational overflow is an error, not a wrap") {
  Rational big(INT64_MAX / 2 + 1);
  try {
    (void)(big * Rational(4));
    FAIL("no overflow raised");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArithmeticOverflow);
  }
}

TEST_CASE("golden ratio identities hold exactly") {
  auto tau = fixtures::golden();
  auto conj = fixtures::golden_conjugate();
  CHECK(tau * tau == tau + QuadraticNumber(1));
  CHECK(tau + conj == QuadraticNumber(1));
  CHECK(tau * conj == QuadraticNumber(-1));
  CHECK(tau.conjugate() == conj);
  CHECK((QuadraticNumber(1) / tau) == tau - QuadraticNumber(1));
  CHECK(tau.floor() == 1);
  CHECK(conj.floor() == -1);
  CHECK(tau.sign() == 1);
  CHECK(conj.sign() == -1);
}

TEST_CASE("sign and order agree with long double evaluation") {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    Rational a(rng.integer(-1000, 1000), rng.integer(1, 50));
    Rational b(rng.integer(-1000, 1000), rng.integer(1, 50));
    QuadraticNumber q(a, b, 5);
    long double v = a.to_long_double() + b.to_long_double() * std::sqrt(5.0L);
    if (std::fabs(v) > 1e-12L) CHECK(q.sign() == (v > 0 ? 1 : -1));
    CHECK(q.floor() == static_cast<std::int64_t>(std::floor(v)));
  }
  // 161/72 overshoots sqrt 5 by 4e-5
  QuadraticNumber close(Rational(-161, 72), Rational(1), 5);
  CHECK(close.sign() == -1);
  CHECK(QuadraticNumber(Rational(9, 4), Rational(-1), 5).sign() == 1);
}

TEST_CASE("mixing radicands is rejected") {
  QuadraticNumber a(Rational(0), Rational(1), 5);
  QuadraticNumber b(Rational(0), Rational(1), 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK(a + QuadraticNumber(3) == QuadraticNumber(Rational(3), Rational(1), 5));
}

TEST_CASE("string form") {
  CHECK(QuadraticNumber(Rational(1, 2), Rational(-1, 2), 5).str() == "1/2 - 1/2*sqrt(5)");
  CHECK(QuadraticNumber(Rational(3)).str() == "3");
}
