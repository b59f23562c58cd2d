#include "modelset/quadratic.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "modelset/errors.hpp"

namespace modelset {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 value) {
  if (value > INT64_MAX || value < -static_cast<i128>(INT64_MAX)) {
    throw Error(ErrorCode::ArithmeticOverflow, "rational component exceeds 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_reduced(i128 num, i128 den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::InjectivityViolation: return "InjectivityViolation";
    case ErrorCode::RegionTooLarge: return "RegionTooLarge";
    case ErrorCode::RegionTooSmall: return "RegionTooSmall";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::NotInL: return "NotInL";
    case ErrorCode::NotSchemeBacked: return "NotSchemeBacked";
    case ErrorCode::ChainFailure: return "ChainFailure";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    std::string head = text.substr(0, slash);
    std::string tail = text.substr(slash + 1);
    std::int64_t n = std::stoll(head, &used);
    if (used != head.size()) throw std::invalid_argument(text);
    std::int64_t d = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "not a rational: '" + text + "'");
  }
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  constexpr double kScale = 1099511627776.0;  // 2^40
  double scaled = value * kScale;
  if (scaled != std::trunc(scaled) || std::fabs(scaled) > 9.0e18) {
    throw Error(ErrorCode::InvalidArgument,
                "value is not exactly representable as a short rational; use \"p/q\"");
  }
  return make_reduced(static_cast<i128>(scaled), static_cast<i128>(1) << 40);
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return Rational(narrow(-static_cast<i128>(num_)), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = make_reduced(static_cast<i128>(num_) + rhs.num_, den_);
  } else {
    *this = make_reduced(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                         static_cast<i128>(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  *this = make_reduced(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  *this = make_reduced(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// --------------------------------------------------------- QuadraticNumber

QuadraticNumber::QuadraticNumber(Rational a) : a_(a) {}

QuadraticNumber::QuadraticNumber(Rational a, Rational b, std::int64_t radicand)
    : a_(a), b_(b), d_(b.is_zero() ? 0 : radicand) {
  if (!b_.is_zero() && radicand < 2) {
    throw Error(ErrorCode::InvalidArgument, "radicand must be a squarefree integer > 1");
  }
}

std::int64_t QuadraticNumber::merge_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  throw Error(ErrorCode::InvalidArgument, "mixed radicands in quadratic arithmetic");
}

int QuadraticNumber::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double QuadraticNumber::to_double() const noexcept {
  long double v = a_.to_long_double();
  if (!b_.is_zero()) v += b_.to_long_double() * std::sqrt(static_cast<long double>(d_));
  return static_cast<double>(v);
}

std::int64_t QuadraticNumber::floor() const {
  if (b_.is_zero()) return a_.floor();
  auto guess = static_cast<std::int64_t>(std::floor(to_double()));
  for (std::int64_t candidate = guess + 1; candidate >= guess - 1; --candidate) {
    if ((*this - QuadraticNumber(Rational(candidate))).sign() >= 0) return candidate;
  }
  throw Error(ErrorCode::ArithmeticOverflow, "floor of quadratic number out of double range");
}

QuadraticNumber QuadraticNumber::conjugate() const { return QuadraticNumber(a_, -b_, d_); }

std::string QuadraticNumber::str() const {
  if (b_.is_zero()) return a_.str();
  return a_.str() + (b_.sign() < 0 ? " - " : " + ") + (b_.sign() < 0 ? (-b_).str() : b_.str()) +
         "*sqrt(" + std::to_string(d_) + ")";
}

QuadraticNumber QuadraticNumber::operator-() const { return QuadraticNumber(-a_, -b_, d_); }

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& rhs) {
  std::int64_t d = merge_radicand(*this, rhs);
  *this = QuadraticNumber(a_ + rhs.a_, b_ + rhs.b_, d);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& rhs) { return *this += -rhs; }

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& rhs) {
  std::int64_t d = merge_radicand(*this, rhs);
  Rational a = a_ * rhs.a_;
  if (!b_.is_zero() && !rhs.b_.is_zero()) a += b_ * rhs.b_ * Rational(d);
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  *this = QuadraticNumber(a, b, d);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  // x / y = x * conj(y) / (a^2 - b^2 D), the norm being rational.
  Rational norm = rhs.a_ * rhs.a_;
  if (!rhs.b_.is_zero()) norm -= rhs.b_ * rhs.b_ * Rational(rhs.d_);
  *this *= rhs.conjugate();
  *this = QuadraticNumber(a_ / norm, b_ / norm, d_);
  return *this;
}

std::strong_ordering operator<=>(const QuadraticNumber& a, const QuadraticNumber& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& q) { return os << q.str(); }

}  // namespace modelset
