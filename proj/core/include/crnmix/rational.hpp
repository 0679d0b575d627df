#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace crnmix {

/// Exact rational with 64-bit terms, normalized (positive denominator, gcd 1).
/// Used for tier exponent bookkeeping where values stay human-scale.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator*(long long k, const Rational& a) {
    return Rational(k * a.num, a.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Safe for the magnitudes handled here (profile exponents and scales).
    return (a.num * b.den) <=> (b.num * a.den);
  }
};

}  // namespace crnmix
