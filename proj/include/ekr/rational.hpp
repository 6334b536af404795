#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "ekr/error.hpp"

namespace ekr {

/// Exact non-negative rational, always reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d = 1) : num(n), den(d) {  // NOLINT(google-explicit-constructor)
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    const auto g = std::gcd(n, d);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto l = static_cast<unsigned __int128>(a.num) * b.den;
    const auto r = static_cast<unsigned __int128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  /// this^2 compared with an integer, without floating point.
  std::strong_ordering square_cmp(std::uint64_t n) const {
    const auto l = static_cast<unsigned __int128>(num) * num;
    const auto r = static_cast<unsigned __int128>(n) * den * den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

}  // namespace ekr
