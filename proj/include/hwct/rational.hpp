#pragma once
// Small exact rational type (int64 numerator / positive denominator),
// sufficient for class-number values and the quasi-modular fit.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hwct/arith.hpp"

namespace hwct {

struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rat: overflow");
    Rat r;
    r.num = static_cast<i64>(n);
    r.den = static_cast<i64>(d);
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.den + (i128)b.num * a.den, (i128)a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.den - (i128)b.num * a.den, (i128)a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_i128((i128)a.num * b.num, (i128)a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return from_i128((i128)a.num * b.den, (i128)a.den * b.num);
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (i128)a.num * b.den < (i128)b.num * a.den;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace hwct
