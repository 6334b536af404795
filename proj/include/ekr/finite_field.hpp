#pragma once

// Finite fields F_{p^k} for p^k <= 2^20.
//
// An element is stored as its index sum(c_i * p^i) where c_0..c_{k-1} are the
// coefficients of its residue modulo the defining polynomial. Index order is
// the canonical enumeration order of the field (0, 1, ..., q-1); constants
// 0..p-1 are the prime subfield.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ekr {

using FieldValue = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 20;

namespace detail {
struct FieldData;
}

class FieldElement;

class FiniteField {
 public:
  /// Field of order p^k whose modulus is the least monic irreducible
  /// polynomial of degree k, comparing coefficient tuples (c_0, ..., c_{k-1})
  /// lexicographically. For k = 1 the modulus is x.
  static FiniteField make(std::uint32_t p, std::uint32_t k);

  std::uint32_t characteristic() const noexcept;
  std::uint32_t degree() const noexcept;
  std::uint32_t order() const noexcept;
  /// Coefficients c_0..c_k of the monic modulus.
  const std::vector<std::uint32_t>& modulus() const noexcept;

  FieldValue add(FieldValue a, FieldValue b) const;
  FieldValue sub(FieldValue a, FieldValue b) const;
  FieldValue neg(FieldValue a) const;
  FieldValue mul(FieldValue a, FieldValue b) const;
  FieldValue inv(FieldValue a) const;  // throws on zero
  FieldValue div(FieldValue a, FieldValue b) const { return mul(a, inv(b)); }
  FieldValue pow(FieldValue a, std::uint64_t e) const;
  /// Image of an integer in the prime subfield.
  FieldValue from_int(std::int64_t v) const;

  /// Least element (in index order) of multiplicative order q-1.
  FieldValue generator() const noexcept;
  std::uint64_t multiplicative_order(FieldValue a) const;
  /// generator^((q-1)/m). Throws unless m divides q-1.
  FieldValue element_of_order(std::uint64_t m) const;
  /// Discrete logarithm base generator(); throws on zero.
  std::uint32_t log(FieldValue a) const;

  std::vector<std::uint32_t> coefficients(FieldValue a) const;
  FieldValue from_coefficients(std::span<const std::uint32_t> coeffs) const;

  FieldElement element(FieldValue v) const;

  bool operator==(const FiniteField& other) const noexcept;
  std::string name() const;

 private:
  explicit FiniteField(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

FiniteField make_field(std::uint32_t p, std::uint32_t k);
FieldElement multiplicative_generator(const FiniteField& field);
FieldElement element_of_order(const FiniteField& field, std::uint64_t m);

bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// Returns (p, k) with n = p^k, or (0, 0) if n is not a prime power.
std::pair<std::uint64_t, std::uint32_t> prime_power_decomposition(std::uint64_t n);

/// Field element bound to its field.
class FieldElement {
 public:
  FieldElement(FiniteField field, FieldValue value);

  const FiniteField& field() const noexcept { return field_; }
  FieldValue value() const noexcept { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  std::uint64_t multiplicative_order() const;
  bool is_zero() const noexcept { return value_ == 0; }

  bool operator==(const FieldElement& o) const noexcept {
    return value_ == o.value_ && field_ == o.field_;
  }

 private:
  void require_same_field(const FieldElement& o) const;
  FiniteField field_;
  FieldValue value_;
};

/// Embedding of `small` into `large` as its unique subfield of that order:
/// table[v] is the image of small-field element v. Throws unless the order of
/// `small` is a subfield order of `large`.
std::vector<FieldValue> subfield_embedding(const FiniteField& small, const FiniteField& large);

}  // namespace ekr
