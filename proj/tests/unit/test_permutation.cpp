#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ekr/error.hpp"
#include "ekr/permutation.hpp"

using namespace ekr;

namespace {

Permutation random_perm(std::mt19937& rng, std::size_t n) {
  std::vector<Point> im(n);
  std::iota(im.begin(), im.end(), Point{0});
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation::from_images(std::span<const Point>(im));
}

// image of w under a cycle list, straight from the definition
std::size_t apply_cycles(const std::vector<std::vector<std::size_t>>& cycles, std::size_t w) {
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == w) return c[(i + 1) % c.size()];
    }
  }
  return w;
}

}  // namespace

TEST_CASE("compose applies the left factor first") {
  const auto a = parse_cycles("(0 1 2)", 3);
  const auto b = parse_cycles("(0 1)", 3);
  const auto ab = compose(a, b);
  // hand table: w -> b(a(w))
  const std::vector<std::vector<std::size_t>> ca{{0, 1, 2}}, cb{{0, 1}};
  for (std::size_t w = 0; w < 3; ++w) CHECK(ab[w] == apply_cycles(cb, apply_cycles(ca, w)));
  CHECK(format_cycles(ab) == "(1 2)");
}

TEST_CASE("identity and inverse") {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_perm(rng, 4);
    CHECK(compose(Permutation(4), g) == g);
    CHECK(compose(g, g.inverse()).is_identity());
  }
  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), InvalidArgument);
}

TEST_CASE("fixed points") {
  CHECK(fixed_points(Permutation(5)).size() == 5);
  CHECK(fixed_points(parse_cycles("(0 1 2 3 4)", 5)).empty());

  std::vector<Point> im{0, 1, 2, 3};
  std::size_t derangements = 0;
  do {
    bool any = false;
    for (std::size_t i = 0; i < 4; ++i) any = any || im[i] == i;
    if (!any) ++derangements;
    CHECK(Permutation::from_images(std::span<const Point>(im)).has_fixed_point() == any);
  } while (std::next_permutation(im.begin(), im.end()));
  CHECK(derangements == 9);
}

TEST_CASE("element order") {
  CHECK(element_order(Permutation(6)) == 1);
  CHECK(element_order(parse_cycles("(3 5)", 6)) == 2);
  const auto a = parse_cycles("(0 1)(2 3 4)", 5);
  std::uint64_t m = 1;
  for (auto cur = a; !cur.is_identity(); cur = cur * a) ++m;
  CHECK(element_order(a) == m);
  CHECK(m == 6);
}

TEST_CASE("parse and format") {
  CHECK(parse_cycles("()", 5) == Permutation(5));
  const auto p = parse_cycles("(0 1)(2 3 4)", 5);
  const std::vector<std::vector<std::size_t>> cycles{{0, 1}, {2, 3, 4}};
  for (std::size_t w = 0; w < 5; ++w) CHECK(p[w] == apply_cycles(cycles, w));
  CHECK(format_cycles(parse_cycles("(0 2)", 3)) == "(0 2)");
  CHECK(format_cycles(Permutation(3)) == "()");
  CHECK(parse_cycles("(0, 1)(2,3)", 4) == parse_cycles("(0 1)(2 3)", 4));
}

TEST_CASE("parse errors name the token") {
  auto message = [](const char* text, std::size_t n) {
    try {
      parse_cycles(text, n);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("(0 1)(1 2)", 3).find("'1'") != std::string::npos);
  CHECK(message("(0 7)", 3).find("'7'") != std::string::npos);
  CHECK(message("(0 x)", 3).find("'x'") != std::string::npos);
  CHECK(message("0 1", 3).find("'0'") != std::string::npos);
  CHECK_THROWS_AS(parse_cycles("(0 1", 3), ParseError);
}

TEST_CASE("round trip on random permutations") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<std::size_t> deg(1, 32);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = deg(rng);
    const auto g = random_perm(rng, n);
    REQUIRE(parse_cycles(format_cycles(g), n) == g);
  }
}

TEST_CASE("intersection relation is symmetric and order is conjugation invariant") {
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 9;
    const auto a = random_perm(rng, n);
    const auto b = random_perm(rng, n);
    const bool ab = fixed_points(compose(a, b.inverse())).empty();
    const bool ba = fixed_points(compose(b, a.inverse())).empty();
    CHECK(ab == ba);
    CHECK(intersects(a, b) == !ab);
    CHECK(element_order(a) == element_order(a.inverse()));
    CHECK(element_order(conjugate(a, b)) == element_order(a));
  }
}
