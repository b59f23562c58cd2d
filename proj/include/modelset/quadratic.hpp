#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace modelset {

/// Exact rational p/q with q > 0 and gcd(p, q) = 1. Every operation checks
/// for 64-bit overflow and throws ArithmeticOverflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p", "p/q" or "-p/q".
  static Rational parse(const std::string& text);
  /// Exact conversion of a double whose binary expansion terminates within
  /// 2^-40; throws InvalidArgument otherwise.
  static Rational from_double(double value);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  long double to_long_double() const noexcept {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  /// Largest integer not exceeding the value.
  std::int64_t floor() const noexcept;
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element a + b*sqrt(D) of the real quadratic field Q(sqrt D). D is a
/// squarefree integer > 1, or 0 for a plain rational. Mixing two distinct
/// radicands with nonzero irrational parts is an InvalidArgument.
class QuadraticNumber {
 public:
  constexpr QuadraticNumber() = default;
  QuadraticNumber(Rational a);  // NOLINT(google-explicit-constructor)
  QuadraticNumber(std::int64_t a) : QuadraticNumber(Rational(a)) {}  // NOLINT
  QuadraticNumber(Rational a, Rational b, std::int64_t radicand);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& irrational_part() const noexcept { return b_; }
  std::int64_t radicand() const noexcept { return d_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const noexcept { return b_.is_zero(); }
  /// Exact sign, decided by comparing a^2 against b^2 D when the parts disagree.
  int sign() const;
  double to_double() const noexcept;
  /// Exact floor, validated against the neighbouring integers.
  std::int64_t floor() const;
  /// Galois conjugate a - b sqrt(D).
  QuadraticNumber conjugate() const;
  std::string str() const;

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& rhs);
  QuadraticNumber& operator-=(const QuadraticNumber& rhs);
  QuadraticNumber& operator*=(const QuadraticNumber& rhs);
  QuadraticNumber& operator/=(const QuadraticNumber& rhs);

  friend QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) { return a += b; }
  friend QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) { return a -= b; }
  friend QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) { return a *= b; }
  friend QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b) { return a /= b; }
  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
    return a.a_ == b.a_ && a.b_ == b.b_;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& a, const QuadraticNumber& b);

 private:
  static std::int64_t merge_radicand(const QuadraticNumber& x, const QuadraticNumber& y);

  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

/// Small dense vector over Q(sqrt D).
using ExactVec = std::vector<QuadraticNumber>;

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const QuadraticNumber& q);

}  // namespace modelset
