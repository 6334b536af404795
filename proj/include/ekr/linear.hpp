#pragma once

// 2x2 matrices and affine maps over a FiniteField.
//
// Vectors are rows and matrices act on the right: v -> vM. Products follow
// the same apply-left-first rule as permutations, so v(MN) = (vM)N and the
// affine law is (v1,M1)(v2,M2) = (v1 M2 + v2, M1 M2).

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ekr/finite_field.hpp"
#include "ekr/permutation.hpp"

namespace ekr {

class Mat2 {
 public:
  /// Entries (a b; c d). With `projective` set the matrix stands for its
  /// scalar class and is stored scaled so the first nonzero entry is 1.
  Mat2(FiniteField field, FieldValue a, FieldValue b, FieldValue c, FieldValue d,
       bool projective = false);
  static Mat2 identity(const FiniteField& field, bool projective = false);
  static Mat2 scalar(const FiniteField& field, FieldValue s, bool projective = false);
  static Mat2 diagonal(const FiniteField& field, FieldValue x, FieldValue y, bool projective = false);

  const FiniteField& field() const noexcept { return field_; }
  FieldValue a() const noexcept { return e_[0]; }
  FieldValue b() const noexcept { return e_[1]; }
  FieldValue c() const noexcept { return e_[2]; }
  FieldValue d() const noexcept { return e_[3]; }
  const std::array<FieldValue, 4>& entries() const noexcept { return e_; }
  bool projective() const noexcept { return projective_; }

  FieldValue det() const;
  FieldValue trace() const;
  bool invertible() const { return det() != 0; }
  Mat2 operator*(const Mat2& o) const;
  Mat2 inverse() const;  // throws on singular
  /// Row vector (x, y) times this matrix.
  std::array<FieldValue, 2> apply(FieldValue x, FieldValue y) const;
  /// Order in GL(2,q), or in PGL(2,q) when projective.
  std::uint64_t order() const;
  bool is_identity() const;
  Mat2 as_projective() const;

  bool operator==(const Mat2& o) const noexcept {
    return e_ == o.e_ && projective_ == o.projective_ && field_.order() == o.field_.order();
  }
  std::size_t hash() const noexcept;

 private:
  void normalise();
  FiniteField field_;
  std::array<FieldValue, 4> e_;
  bool projective_;
};

/// Points of PG(1,q): index 0 is [1:0], index 1+a is [a:1].
std::size_t projective_point_count(const FiniteField& field);
std::size_t projective_point_index(const FiniteField& field, FieldValue x, FieldValue y);
std::array<FieldValue, 2> projective_point(const FiniteField& field, std::size_t index);
/// Induced permutation of PG(1,q). Scalars act trivially.
Permutation projective_action(const Mat2& m);

inline constexpr std::size_t kMaxAffineDim = 4;

class AffineElement {
 public:
  /// Identity map of F^dim.
  AffineElement(FiniteField field, std::size_t dim);
  /// x -> x*linear + shift; `linear` is row-major dim x dim. Throws if singular.
  AffineElement(FiniteField field, std::span<const FieldValue> shift, std::span<const FieldValue> linear);
  static AffineElement translation(const FiniteField& field, std::span<const FieldValue> shift);
  static AffineElement linear(const FiniteField& field, std::span<const FieldValue> matrix);

  const FiniteField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  FieldValue shift(std::size_t i) const { return v_[i]; }
  FieldValue entry(std::size_t r, std::size_t c) const { return m_[r * kMaxAffineDim + c]; }
  std::vector<FieldValue> shift_vector() const;
  std::vector<FieldValue> linear_part() const;  // row-major

  AffineElement operator*(const AffineElement& o) const;
  AffineElement inverse() const;
  std::vector<FieldValue> apply(std::span<const FieldValue> x) const;
  bool is_identity() const;
  bool is_translation() const;

  bool operator==(const AffineElement& o) const noexcept {
    return dim_ == o.dim_ && v_ == o.v_ && m_ == o.m_;
  }
  std::size_t hash() const noexcept;

 private:
  FiniteField field_;
  std::size_t dim_;
  std::array<FieldValue, kMaxAffineDim> v_{};
  std::array<FieldValue, kMaxAffineDim * kMaxAffineDim> m_{};
};

/// Determinant of a dim x dim row-major matrix.
FieldValue determinant(const FiniteField& field, std::span<const FieldValue> m, std::size_t dim);

/// Index of a vector of F^dim in the enumeration sum(x_i * q^(dim-1-i)).
std::size_t vector_index(const FiniteField& field, std::span<const FieldValue> x);
std::vector<FieldValue> vector_at(const FiniteField& field, std::size_t dim, std::size_t index);

}  // namespace ekr

template <>
struct std::hash<ekr::Mat2> {
  std::size_t operator()(const ekr::Mat2& m) const noexcept { return m.hash(); }
};
template <>
struct std::hash<ekr::AffineElement> {
  std::size_t operator()(const ekr::AffineElement& m) const noexcept { return m.hash(); }
};
