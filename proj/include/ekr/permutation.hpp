#pragma once

// Permutations of {0..n-1}.
//
// Convention: permutations act on the right. compose(a, b) applies a first
// and then b, so the image of w under compose(a, b) is b(a(w)). Written with
// exponents this is w^(ab) = (w^a)^b. All products in this library follow it.
//
// Points are 0-based everywhere, including the cycle notation "(0 1 2)(3 4)".

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ekr {

using Point = std::uint16_t;

inline constexpr std::size_t kMaxDegree = 65535;

class Permutation {
 public:
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree = 1);

  /// Throws InvalidArgument unless `images` is a bijection of {0..n-1}.
  static Permutation from_images(std::span<const std::size_t> images);
  static Permutation from_images(std::span<const Point> images);
  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t point) const { return images_[point]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  bool has_fixed_point() const noexcept;
  std::vector<Point> fixed_points() const;
  std::size_t fixed_point_count() const noexcept;

  Permutation inverse() const;
  /// Apply *this first, then `other`.
  Permutation operator*(const Permutation& other) const;
  /// Least m >= 1 with a^m = identity (lcm of the cycle lengths).
  std::uint64_t order() const;
  /// Disjoint cycles of length >= 2, each starting at its least point.
  std::vector<std::vector<Point>> cycles() const;

  bool operator==(const Permutation& other) const = default;
  auto operator<=>(const Permutation& other) const = default;

  std::size_t hash() const noexcept;

 private:
  std::vector<Point> images_;
};

Permutation compose(const Permutation& a, const Permutation& b);
std::vector<Point> fixed_points(const Permutation& a);
std::uint64_t element_order(const Permutation& a);
Permutation conjugate(const Permutation& a, const Permutation& by);  // by^-1 a by
/// True iff x y^-1 fixes a point, i.e. some point has the same image under x and y.
bool intersects(const Permutation& x, const Permutation& y);

/// Parses 0-based disjoint cycle notation, e.g. "(0 1 2)(3 4)" or "()".
/// Commas are accepted as separators. Errors name the offending token.
Permutation parse_cycles(std::string_view text, std::size_t degree);
/// Formats as disjoint cycles; the identity prints as "()".
std::string format_cycles(const Permutation& a);

}  // namespace ekr

template <>
struct std::hash<ekr::Permutation> {
  std::size_t operator()(const ekr::Permutation& p) const noexcept { return p.hash(); }
};
