#include <random>

#include "doctest.h"
#include "ekr/error.hpp"
#include "ekr/finite_field.hpp"
#include "ekr/linear.hpp"

using namespace ekr;

TEST_CASE("prime fields and F4") {
  const auto f5 = make_field(5, 1);
  CHECK(f5.modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(f5.order() == 5);
  const auto f4 = make_field(2, 2);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK_THROWS_AS(make_field(6, 1), InvalidArgument);
  CHECK_THROWS_AS(make_field(2, 21), InvalidArgument);
}

TEST_CASE("F25 modulus is the first irreducible of the lex scan") {
  // x^2 + a x + b, scanned with b (the constant) most significant
  std::vector<std::uint32_t> expected;
  for (std::uint32_t b = 0; b < 5 && expected.empty(); ++b) {
    for (std::uint32_t a = 0; a < 5; ++a) {
      bool root = false;
      for (std::uint32_t r = 0; r < 5; ++r) root = root || (r * r + a * r + b) % 5 == 0;
      if (!root) {
        expected = {b, a, 1};
        break;
      }
    }
  }
  CHECK(make_field(5, 2).modulus() == expected);
}

TEST_CASE("multiplicative generators") {
  auto least_generator = [](std::uint32_t p) {
    for (std::uint32_t c = 1; c < p; ++c) {
      std::uint32_t x = c, ord = 1;
      while (x != 1) {
        x = x * c % p;
        ++ord;
      }
      if (ord == p - 1) return c;
    }
    return 0u;
  };
  CHECK(multiplicative_generator(make_field(5, 1)).value() == least_generator(5));
  CHECK(multiplicative_generator(make_field(7, 1)).value() == least_generator(7));
  CHECK(least_generator(5) == 2);
  CHECK(least_generator(7) == 3);

  const auto f4 = make_field(2, 2);
  // x has index 2; both 2 and 3 cube to 1 without being 1
  for (FieldValue c : {2u, 3u}) CHECK(f4.mul(c, f4.mul(c, c)) == 1);
  CHECK(multiplicative_generator(f4).value() == 2);
}

TEST_CASE("element_of_order") {
  const auto f = make_field(5, 2);
  CHECK(element_of_order(f, 1).value() == 1);
  CHECK(element_of_order(f, 24).value() == f.generator());
  const auto e = element_of_order(f, 8);
  CHECK(e == multiplicative_generator(f).pow(3));
  FieldValue x = e.value();
  int ord = 1;
  while (x != 1) {
    x = f.mul(x, e.value());
    ++ord;
  }
  CHECK(ord == 8);
  CHECK_THROWS_AS(element_of_order(f, 5), InvalidArgument);
}

TEST_CASE("field axioms and Frobenius additivity") {
  std::mt19937 rng(1234);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 1}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {7, 1}, {29, 1}, {29, 2}, {3, 3}, {13, 2}}) {
    const auto f = make_field(p, k);
    std::uniform_int_distribution<FieldValue> pick(0, f.order() - 1);
    for (int i = 0; i < 200; ++i) {
      const FieldValue a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
    }
  }
}

TEST_CASE("subfield embedding is a ring homomorphism") {
  const auto small = make_field(2, 2);
  const auto large = make_field(2, 4);
  const auto emb = subfield_embedding(small, large);
  for (FieldValue a = 0; a < 4; ++a) {
    for (FieldValue b = 0; b < 4; ++b) {
      CHECK(emb[small.add(a, b)] == large.add(emb[a], emb[b]));
      CHECK(emb[small.mul(a, b)] == large.mul(emb[a], emb[b]));
    }
  }
  CHECK_THROWS_AS(subfield_embedding(make_field(2, 3), large), InvalidArgument);
}

TEST_CASE("projective action") {
  const auto f4 = make_field(2, 2);
  CHECK(projective_action(Mat2::identity(f4)).is_identity());
  CHECK(projective_action(Mat2::scalar(f4, 3)).is_identity());
  const Mat2 swap(f4, 0, 1, 1, 0);
  const auto perm = projective_action(swap);
  // (x, y)(0 1; 1 0) = (y, x)
  for (std::size_t i = 0; i < 5; ++i) {
    const auto pt = projective_point(f4, i);
    FieldValue x = pt[1], y = pt[0];
    std::size_t expected;
    if (y == 0) {
      expected = 0;
    } else {
      expected = 1 + f4.mul(x, f4.inv(y));
    }
    CHECK(perm[i] == expected);
  }
  CHECK(perm[0] == 1);
  CHECK(perm[1] == 0);
  CHECK_THROWS_AS(projective_action(Mat2(f4, 1, 1, 1, 1)), InvalidArgument);

  std::mt19937 rng(5);
  const auto f = make_field(3, 2);
  std::uniform_int_distribution<FieldValue> pick(0, f.order() - 1);
  auto random_mat = [&] {
    for (;;) {
      Mat2 m(f, pick(rng), pick(rng), pick(rng), pick(rng));
      if (m.invertible()) return m;
    }
  };
  for (int i = 0; i < 100; ++i) {
    const auto m = random_mat(), n = random_mat();
    CHECK(projective_action(m * n) == compose(projective_action(m), projective_action(n)));
    CHECK((m * m.inverse()).is_identity());
  }
}

TEST_CASE("projective matrices are scalar classes") {
  const auto f = make_field(5, 1);
  const Mat2 m(f, 2, 1, 0, 3, true);
  const Mat2 m2(f, 4, 2, 0, 1, true);
  CHECK(m == m2);
  CHECK(Mat2::scalar(f, 3, true).is_identity());
  CHECK(Mat2::scalar(f, 3, true).order() == 1);
  CHECK(Mat2(f, 0, 1, 4, 0).order() == 4);
  CHECK(Mat2(f, 0, 1, 4, 0, true).order() == 2);
}

TEST_CASE("affine elements") {
  const auto f = make_field(3, 1);
  std::mt19937 rng(11);
  std::uniform_int_distribution<FieldValue> pick(0, 2);
  auto random_affine = [&](std::size_t d) {
    for (;;) {
      std::vector<FieldValue> v(d), m(d * d);
      for (auto& x : v) x = pick(rng);
      for (auto& x : m) x = pick(rng);
      if (determinant(f, m, d) != 0) return AffineElement(f, v, m);
    }
  };
  for (std::size_t d = 1; d <= 4; ++d) {
    const AffineElement id(f, d);
    for (int i = 0; i < 50; ++i) {
      const auto a = random_affine(d), b = random_affine(d), c = random_affine(d);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * id == a);
      CHECK(id * a == a);
      CHECK((a * a.inverse()).is_identity());
      // x^(ab) = (x^a)^b
      std::vector<FieldValue> x(d);
      for (auto& t : x) t = pick(rng);
      CHECK((a * b).apply(x) == b.apply(a.apply(x)));
    }
  }
  const std::vector<FieldValue> sing{1, 1, 1, 1};
  const std::vector<FieldValue> zero{0, 0};
  CHECK_THROWS_AS(AffineElement(f, zero, sing), InvalidArgument);
}
