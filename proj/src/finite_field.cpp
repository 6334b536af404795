#include "ekr/finite_field.hpp"

#include <algorithm>
#include <numeric>

#include "ekr/error.hpp"

namespace ekr {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // c_0..c_k, monic
  FieldValue generator = 0;
  std::vector<FieldValue> exp;     // exp[i] = generator^i, i < q-1
  std::vector<std::uint32_t> log;  // log[exp[i]] = i; log[0] unused
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, a != 0
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e != 0) {
    if ((e & 1) != 0) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo nonzero b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return true;
  // trial division by every monic polynomial of degree 1..deg/2
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant position of the lexicographic scan
    Poly f(k + 1);
    std::uint64_t rest = idx;
    for (std::uint32_t i = k; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

Poly to_poly(FieldValue v, std::uint32_t p, std::uint32_t k) {
  Poly r(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    r[i] = v % p;
    v /= p;
  }
  trim(r);
  return r;
}

FieldValue from_poly(const Poly& a, std::uint32_t p) {
  FieldValue v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::pair<std::uint64_t, std::uint32_t> prime_power_decomposition(std::uint64_t n) {
  const auto primes = prime_divisors(n);
  if (primes.size() != 1) return {0, 0};
  std::uint32_t k = 0;
  while (n > 1) {
    n /= primes[0];
    ++k;
  }
  return {primes[0], k};
}

FiniteField FiniteField::make(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidArgument("field extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) {
      throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(k) +
                            " exceeds the cap 2^20");
    }
  }
  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->k = k;
  data->q = static_cast<std::uint32_t>(q);
  data->modulus = least_irreducible(p, k);

  const std::uint64_t group_order = q - 1;
  if (group_order == 1) {
    data->generator = 1;
    data->exp = {1};
    data->log = {0, 0};
  } else {
    const auto primes = prime_divisors(group_order);
    auto slow_pow = [&](FieldValue a, std::uint64_t e) {
      Poly result{1};
      Poly base = to_poly(a, p, k);
      while (e != 0) {
        if ((e & 1) != 0) result = poly_mul_mod(result, base, data->modulus, p);
        base = poly_mul_mod(base, base, data->modulus, p);
        e >>= 1;
      }
      return from_poly(result, p);
    };
    FieldValue g = 0;
    for (FieldValue cand = 1; cand < q; ++cand) {
      bool full = true;
      for (auto r : primes) {
        if (slow_pow(cand, group_order / r) == 1) {
          full = false;
          break;
        }
      }
      if (full) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw InternalError("no multiplicative generator found");
    data->generator = g;
    data->exp.resize(group_order);
    data->log.assign(q, 0);
    const Poly gp = to_poly(g, p, k);
    Poly cur{1};
    for (std::uint64_t i = 0; i < group_order; ++i) {
      const FieldValue v = from_poly(cur, p);
      data->exp[i] = v;
      data->log[v] = static_cast<std::uint32_t>(i);
      cur = poly_mul_mod(cur, gp, data->modulus, p);
    }
  }
  return FiniteField(std::move(data));
}

std::uint32_t FiniteField::characteristic() const noexcept { return data_->p; }
std::uint32_t FiniteField::degree() const noexcept { return data_->k; }
std::uint32_t FiniteField::order() const noexcept { return data_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const noexcept { return data_->modulus; }
FieldValue FiniteField::generator() const noexcept { return data_->generator; }

FieldValue FiniteField::add(FieldValue a, FieldValue b) const {
  const std::uint32_t p = data_->p;
  if (data_->k == 1) return (a + b) % p;
  FieldValue r = 0;
  FieldValue scale = 1;
  for (std::uint32_t i = 0; i < data_->k; ++i) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

FieldValue FiniteField::neg(FieldValue a) const {
  const std::uint32_t p = data_->p;
  if (data_->k == 1) return (p - a) % p;
  FieldValue r = 0;
  FieldValue scale = 1;
  for (std::uint32_t i = 0; i < data_->k; ++i) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

FieldValue FiniteField::sub(FieldValue a, FieldValue b) const { return add(a, neg(b)); }

FieldValue FiniteField::mul(FieldValue a, FieldValue b) const {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t n = data_->q - 1;
  return data_->exp[(static_cast<std::uint64_t>(data_->log[a]) + data_->log[b]) % n];
}

FieldValue FiniteField::inv(FieldValue a) const {
  if (a == 0) throw InvalidArgument("division by zero in " + name());
  const std::uint64_t n = data_->q - 1;
  return data_->exp[(n - data_->log[a]) % n];
}

FieldValue FiniteField::pow(FieldValue a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = data_->q - 1;
  return data_->exp[(static_cast<std::uint64_t>(data_->log[a]) * (e % n)) % n];
}

FieldValue FiniteField::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(data_->p);
  return static_cast<FieldValue>(((v % p) + p) % p);
}

std::uint64_t FiniteField::multiplicative_order(FieldValue a) const {
  if (a == 0) throw InvalidArgument("zero has no multiplicative order");
  const std::uint64_t n = data_->q - 1;
  return n / std::gcd<std::uint64_t>(n, data_->log[a]);
}

FieldValue FiniteField::element_of_order(std::uint64_t m) const {
  const std::uint64_t n = data_->q - 1;
  if (m == 0 || n % m != 0) {
    throw InvalidArgument("no element of order " + std::to_string(m) + " in " + name());
  }
  return pow(data_->generator, n / m);
}

std::uint32_t FiniteField::log(FieldValue a) const {
  if (a == 0) throw InvalidArgument("logarithm of zero");
  return data_->log[a];
}

std::vector<std::uint32_t> FiniteField::coefficients(FieldValue a) const {
  std::vector<std::uint32_t> r(data_->k);
  for (std::uint32_t i = 0; i < data_->k; ++i) {
    r[i] = a % data_->p;
    a /= data_->p;
  }
  return r;
}

FieldValue FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != data_->k) {
    throw InvalidArgument("expected " + std::to_string(data_->k) + " coefficients for " + name());
  }
  FieldValue v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= data_->p) throw InvalidArgument("coefficient out of range for " + name());
    v = v * data_->p + coeffs[i];
  }
  return v;
}

FieldElement FiniteField::element(FieldValue v) const {
  if (v >= data_->q) throw InvalidArgument("value " + std::to_string(v) + " outside " + name());
  return FieldElement(*this, v);
}

bool FiniteField::operator==(const FiniteField& other) const noexcept {
  return data_ == other.data_ || (data_->p == other.data_->p && data_->k == other.data_->k);
}

std::string FiniteField::name() const {
  return "F_" + std::to_string(data_->q);
}

FiniteField make_field(std::uint32_t p, std::uint32_t k) { return FiniteField::make(p, k); }

FieldElement multiplicative_generator(const FiniteField& field) {
  if (field.order() < 3) throw InvalidArgument("multiplicative generator needs a field of order >= 3");
  return field.element(field.generator());
}

FieldElement element_of_order(const FiniteField& field, std::uint64_t m) {
  return field.element(field.element_of_order(m));
}

FieldElement::FieldElement(FiniteField field, FieldValue value)
    : field_(std::move(field)), value_(value) {
  if (value_ >= field_.order()) throw InvalidArgument("field element out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw InvalidArgument("arithmetic between " + field_.name() + " and " + o.field_.name());
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(o);
  return {field_, field_.div(value_, o.value_)};
}
FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
std::uint64_t FieldElement::multiplicative_order() const { return field_.multiplicative_order(value_); }

std::vector<FieldValue> subfield_embedding(const FiniteField& small, const FiniteField& large) {
  if (small.characteristic() != large.characteristic() || large.degree() % small.degree() != 0) {
    throw InvalidArgument(small.name() + " is not a subfield of " + large.name());
  }
  const std::uint32_t p = small.characteristic();
  // Image of x: a root in `large` of the small field's modulus.
  const auto& m = small.modulus();
  FieldValue root = 0;
  bool found = false;
  for (FieldValue r = 0; r < large.order() && !found; ++r) {
    FieldValue acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = large.add(large.mul(acc, r), large.from_int(m[i]));
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw InternalError("no root of the subfield modulus found");
  std::vector<FieldValue> table(small.order());
  for (FieldValue v = 0; v < small.order(); ++v) {
    const auto coeffs = small.coefficients(v);
    FieldValue acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = large.add(large.mul(acc, root), coeffs[i] % p);
    table[v] = acc;
  }
  return table;
}

}  // namespace ekr
