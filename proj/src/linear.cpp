#include "ekr/linear.hpp"

#include "ekr/error.hpp"

namespace ekr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Mat2::Mat2(FiniteField field, FieldValue a, FieldValue b, FieldValue c, FieldValue d, bool projective)
    : field_(std::move(field)), e_{a, b, c, d}, projective_(projective) {
  for (auto v : e_) {
    if (v >= field_.order()) throw InvalidArgument("matrix entry outside " + field_.name());
  }
  if (projective_) normalise();
}

Mat2 Mat2::identity(const FiniteField& field, bool projective) { return {field, 1, 0, 0, 1, projective}; }

Mat2 Mat2::scalar(const FiniteField& field, FieldValue s, bool projective) {
  return {field, s, 0, 0, s, projective};
}

Mat2 Mat2::diagonal(const FiniteField& field, FieldValue x, FieldValue y, bool projective) {
  return {field, x, 0, 0, y, projective};
}

void Mat2::normalise() {
  if (det() == 0) throw InvalidArgument("singular matrix has no projective class");
  for (auto v : e_) {
    if (v != 0) {
      const FieldValue s = field_.inv(v);
      for (auto& x : e_) x = field_.mul(x, s);
      return;
    }
  }
}

FieldValue Mat2::det() const { return field_.sub(field_.mul(e_[0], e_[3]), field_.mul(e_[1], e_[2])); }

FieldValue Mat2::trace() const { return field_.add(e_[0], e_[3]); }

Mat2 Mat2::operator*(const Mat2& o) const {
  if (!(field_ == o.field_)) throw InvalidArgument("matrix product across different fields");
  const auto& f = field_;
  return {f,
          f.add(f.mul(e_[0], o.e_[0]), f.mul(e_[1], o.e_[2])),
          f.add(f.mul(e_[0], o.e_[1]), f.mul(e_[1], o.e_[3])),
          f.add(f.mul(e_[2], o.e_[0]), f.mul(e_[3], o.e_[2])),
          f.add(f.mul(e_[2], o.e_[1]), f.mul(e_[3], o.e_[3])),
          projective_ || o.projective_};
}

Mat2 Mat2::inverse() const {
  const FieldValue dt = det();
  if (dt == 0) throw InvalidArgument("singular matrix has no inverse");
  const auto& f = field_;
  const FieldValue s = f.inv(dt);
  return {f, f.mul(e_[3], s), f.neg(f.mul(e_[1], s)), f.neg(f.mul(e_[2], s)), f.mul(e_[0], s), projective_};
}

std::array<FieldValue, 2> Mat2::apply(FieldValue x, FieldValue y) const {
  const auto& f = field_;
  return {f.add(f.mul(x, e_[0]), f.mul(y, e_[2])), f.add(f.mul(x, e_[1]), f.mul(y, e_[3]))};
}

bool Mat2::is_identity() const {
  if (projective_) return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3];
  return e_ == std::array<FieldValue, 4>{1, 0, 0, 1};
}

std::uint64_t Mat2::order() const {
  if (!invertible()) throw InvalidArgument("singular matrix has no order");
  std::uint64_t n = 1;
  Mat2 cur = *this;
  while (!cur.is_identity()) {
    cur = cur * *this;
    ++n;
  }
  return n;
}

Mat2 Mat2::as_projective() const { return {field_, e_[0], e_[1], e_[2], e_[3], true}; }

std::size_t Mat2::hash() const noexcept {
  std::size_t h = field_.order();
  for (auto v : e_) h = mix(h, v);
  return mix(h, projective_ ? 1 : 0);
}

std::size_t projective_point_count(const FiniteField& field) { return field.order() + 1; }

std::size_t projective_point_index(const FiniteField& field, FieldValue x, FieldValue y) {
  if (y == 0) {
    if (x == 0) throw InvalidArgument("the zero vector is not a projective point");
    return 0;
  }
  return 1 + field.div(x, y);
}

std::array<FieldValue, 2> projective_point(const FiniteField& field, std::size_t index) {
  if (index == 0) return {1, 0};
  if (index > field.order()) throw InvalidArgument("projective point index out of range");
  return {static_cast<FieldValue>(index - 1), 1};
}

Permutation projective_action(const Mat2& m) {
  if (!m.invertible()) throw InvalidArgument("singular matrix does not act on PG(1,q)");
  const auto& f = m.field();
  const std::size_t n = projective_point_count(f);
  std::vector<Point> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pt = projective_point(f, i);
    const auto im = m.apply(pt[0], pt[1]);
    images[i] = static_cast<Point>(projective_point_index(f, im[0], im[1]));
  }
  return Permutation::from_images(std::span<const Point>(images));
}

FieldValue determinant(const FiniteField& field, std::span<const FieldValue> m, std::size_t dim) {
  std::vector<FieldValue> a(m.begin(), m.end());
  FieldValue det = 1;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && a[pivot * dim + col] == 0) ++pivot;
    if (pivot == dim) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(a[pivot * dim + j], a[col * dim + j]);
      det = field.neg(det);
    }
    const FieldValue pv = a[col * dim + col];
    det = field.mul(det, pv);
    const FieldValue pinv = field.inv(pv);
    for (std::size_t r = col + 1; r < dim; ++r) {
      const FieldValue factor = field.mul(a[r * dim + col], pinv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < dim; ++j) {
        a[r * dim + j] = field.sub(a[r * dim + j], field.mul(factor, a[col * dim + j]));
      }
    }
  }
  return det;
}

AffineElement::AffineElement(FiniteField field, std::size_t dim) : field_(std::move(field)), dim_(dim) {
  if (dim_ == 0 || dim_ > kMaxAffineDim) throw InvalidArgument("affine dimension must be in 1..4");
  for (std::size_t i = 0; i < dim_; ++i) m_[i * kMaxAffineDim + i] = 1;
}

AffineElement::AffineElement(FiniteField field, std::span<const FieldValue> shift,
                             std::span<const FieldValue> linear)
    : field_(std::move(field)), dim_(shift.size()) {
  if (dim_ == 0 || dim_ > kMaxAffineDim) throw InvalidArgument("affine dimension must be in 1..4");
  if (linear.size() != dim_ * dim_) throw InvalidArgument("linear part has the wrong size");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (shift[i] >= field_.order()) throw InvalidArgument("translation entry outside " + field_.name());
    v_[i] = shift[i];
    for (std::size_t j = 0; j < dim_; ++j) {
      const FieldValue x = linear[i * dim_ + j];
      if (x >= field_.order()) throw InvalidArgument("matrix entry outside " + field_.name());
      m_[i * kMaxAffineDim + j] = x;
    }
  }
  if (determinant(field_, linear, dim_) == 0) throw InvalidArgument("affine linear part is singular");
}

AffineElement AffineElement::translation(const FiniteField& field, std::span<const FieldValue> shift) {
  std::vector<FieldValue> id(shift.size() * shift.size(), 0);
  for (std::size_t i = 0; i < shift.size(); ++i) id[i * shift.size() + i] = 1;
  return {field, shift, id};
}

AffineElement AffineElement::linear(const FiniteField& field, std::span<const FieldValue> matrix) {
  std::size_t d = 1;
  while (d * d < matrix.size()) ++d;
  if (d * d != matrix.size()) throw InvalidArgument("matrix size is not a square");
  std::vector<FieldValue> zero(d, 0);
  return {field, zero, matrix};
}

std::vector<FieldValue> AffineElement::shift_vector() const { return {v_.begin(), v_.begin() + dim_}; }

std::vector<FieldValue> AffineElement::linear_part() const {
  std::vector<FieldValue> r(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) r[i * dim_ + j] = m_[i * kMaxAffineDim + j];
  }
  return r;
}

AffineElement AffineElement::operator*(const AffineElement& o) const {
  if (dim_ != o.dim_) throw InvalidArgument("affine product across different dimensions");
  const auto& f = field_;
  AffineElement r(field_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    FieldValue acc = o.v_[j];
    for (std::size_t k = 0; k < dim_; ++k) acc = f.add(acc, f.mul(v_[k], o.m_[k * kMaxAffineDim + j]));
    r.v_[j] = acc;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      FieldValue acc = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        acc = f.add(acc, f.mul(m_[i * kMaxAffineDim + k], o.m_[k * kMaxAffineDim + j]));
      }
      r.m_[i * kMaxAffineDim + j] = acc;
    }
  }
  return r;
}

AffineElement AffineElement::inverse() const {
  const auto& f = field_;
  const std::size_t d = dim_;
  // Gauss-Jordan on [M | I]
  std::array<FieldValue, kMaxAffineDim * 2 * kMaxAffineDim> aug{};
  const std::size_t w = 2 * d;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug[i * w + j] = m_[i * kMaxAffineDim + j];
    aug[i * w + d + i] = 1;
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && aug[pivot * w + col] == 0) ++pivot;
    if (pivot == d) throw InternalError("affine element with singular linear part");
    if (pivot != col) {
      for (std::size_t j = 0; j < w; ++j) std::swap(aug[pivot * w + j], aug[col * w + j]);
    }
    const FieldValue pinv = f.inv(aug[col * w + col]);
    for (std::size_t j = 0; j < w; ++j) aug[col * w + j] = f.mul(aug[col * w + j], pinv);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const FieldValue factor = aug[r * w + col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < w; ++j) {
        aug[r * w + j] = f.sub(aug[r * w + j], f.mul(factor, aug[col * w + j]));
      }
    }
  }
  AffineElement r(field_, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) r.m_[i * kMaxAffineDim + j] = aug[i * w + d + j];
  }
  // shift is -v M^-1
  for (std::size_t j = 0; j < d; ++j) {
    FieldValue acc = 0;
    for (std::size_t k = 0; k < d; ++k) acc = f.add(acc, f.mul(v_[k], r.m_[k * kMaxAffineDim + j]));
    r.v_[j] = f.neg(acc);
  }
  return r;
}

std::vector<FieldValue> AffineElement::apply(std::span<const FieldValue> x) const {
  if (x.size() != dim_) throw InvalidArgument("vector has the wrong dimension");
  std::vector<FieldValue> r(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    FieldValue acc = v_[j];
    for (std::size_t k = 0; k < dim_; ++k) acc = field_.add(acc, field_.mul(x[k], m_[k * kMaxAffineDim + j]));
    r[j] = acc;
  }
  return r;
}

bool AffineElement::is_identity() const { return *this == AffineElement(field_, dim_); }

bool AffineElement::is_translation() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (m_[i * kMaxAffineDim + j] != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

std::size_t AffineElement::hash() const noexcept {
  std::size_t h = dim_;
  for (std::size_t i = 0; i < dim_; ++i) h = mix(h, v_[i]);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) h = mix(h, m_[i * kMaxAffineDim + j]);
  }
  return h;
}

std::size_t vector_index(const FiniteField& field, std::span<const FieldValue> x) {
  std::size_t idx = 0;
  for (auto v : x) idx = idx * field.order() + v;
  return idx;
}

std::vector<FieldValue> vector_at(const FiniteField& field, std::size_t dim, std::size_t index) {
  std::vector<FieldValue> r(dim);
  for (std::size_t i = dim; i-- > 0;) {
    r[i] = static_cast<FieldValue>(index % field.order());
    index /= field.order();
  }
  return r;
}

}  // namespace ekr
