#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "blocklab/types.hpp"

namespace blocklab {

// Exact fraction of two 64-bit integers, always normalized: den > 0, gcd(|num|, den) == 1.
// Big enough for every quantity in this library; intermediate products use 128-bit math.
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw ContractViolation("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_integer() const { return den == 1; }

  // Valid only when den == 1; anything else is a caller bug.
  std::int64_t as_integer() const {
    if (den != 1) throw ContractViolation("rational is not integral");
    return num;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return reduce(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.den - (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    return reduce(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw ContractViolation("rational division by zero");
    return reduce((__int128)a.num * b.den, (__int128)a.den * b.num);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "9" when integral, "91/10" otherwise. Exact and diff-stable.
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static Rational reduce(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num = (std::int64_t)n;
    r.den = (std::int64_t)d;
    if (r.num == 0) r.den = 1;
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
};

// Quotient rounded toward negative infinity. den must be positive.
inline std::int64_t floor_div(__int128 num, std::int64_t den) {
  if (den <= 0) throw ContractViolation("floor_div needs a positive denominator");
  __int128 q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return (std::int64_t)q;
}

// floor(value * num / den) without intermediate overflow.
inline Value scale_floor(Value value, std::int64_t num, std::int64_t den) {
  return floor_div((__int128)value * num, den);
}

}  // namespace blocklab
