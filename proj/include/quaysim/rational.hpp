#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "quaysim/errors.hpp"

namespace quaysim {

// Exact rational arithmetic on 64-bit numerator/denominator. KPI sums and
// service durations must be reproducible to the minute, so no floating point
// on those paths. Intermediates are widened to 128 bits; a result that does
// not fit back into 64 bits throws.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw InvalidValue("rational with zero denominator");
    reduce();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  // floor(n/d) with the usual toward-negative-infinity convention.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  // Rounds to the nearest integer; exact halves go up (toward +infinity).
  long long round_half_up() const {
    // floor((2n + d) / 2d)
    __int128 n2 = static_cast<__int128>(num_) * 2 + den_;
    __int128 d2 = static_cast<__int128>(den_) * 2;
    __int128 q = n2 / d2;
    if (n2 % d2 != 0 && n2 < 0) --q;
    return static_cast<long long>(q);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidValue("rational division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Accepts "5", "-3", "0.35", "7/20". Decimal strings convert exactly.
  static Rational parse(std::string_view text);

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational make(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  static long long narrow(__int128 v) {
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (v < lo || v > hi) throw Error("rational overflow");
    return static_cast<long long>(v);
  }

  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational pow(Rational base, int exponent) {
  if (exponent < 0) throw InvalidValue("negative rational exponent");
  Rational result{1};
  while (exponent-- > 0) result *= base;
  return result;
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw InvalidValue("not a number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    long long p = 0, q = 0;
    auto [ptr1, ec1] = std::from_chars(text.data(), text.data() + slash, p);
    auto [ptr2, ec2] = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
    if (ec1 != std::errc{} || ec2 != std::errc{} || ptr1 != text.data() + slash ||
        ptr2 != text.data() + text.size())
      fail();
    return Rational(p, q);
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
    if (body.empty()) fail();
  }
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) fail();

  __int128 num = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') fail();
    num = num * 10 + (c - '0');
  }
  __int128 den = 1;
  for (char c : frac) {
    if (c < '0' || c > '9') fail();
    num = num * 10 + (c - '0');
    den *= 10;
    if (den > 1'000'000'000'000'000'000LL) throw Error("rational overflow");
  }
  if (negative) num = -num;
  return make(num, den);
}

}  // namespace quaysim
