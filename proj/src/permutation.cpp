#include "ekr/permutation.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "ekr/error.hpp"

namespace ekr {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree == 0 || degree > kMaxDegree) {
    throw InvalidArgument("permutation degree must be in 1..65535, got " + std::to_string(degree));
  }
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::span<const std::size_t> images) {
  std::vector<Point> narrowed(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] > kMaxDegree) {
      throw InvalidArgument("image " + std::to_string(images[i]) + " of point " +
                            std::to_string(i) + " is out of range");
    }
    narrowed[i] = static_cast<Point>(images[i]);
  }
  return from_images(std::span<const Point>(narrowed));
}

Permutation Permutation::from_images(std::span<const Point> images) {
  if (images.empty() || images.size() > kMaxDegree) {
    throw InvalidArgument("permutation degree must be in 1..65535, got " +
                          std::to_string(images.size()));
  }
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::size_t v = images[i];
    if (v >= images.size()) {
      throw InvalidArgument("image " + std::to_string(v) + " of point " + std::to_string(i) +
                            " is out of range");
    }
    if (seen[v]) throw InvalidArgument("image " + std::to_string(v) + " appears twice");
    seen[v] = true;
  }
  Permutation p(images.size());
  p.images_.assign(images.begin(), images.end());
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

bool Permutation::has_fixed_point() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] == i) return true;
  }
  return false;
}

std::vector<Point> Permutation::fixed_points() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] == i) out.push_back(static_cast<Point>(i));
  }
  return out;
}

std::size_t Permutation::fixed_point_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) n += images_[i] == i;
  return n;
}

Permutation Permutation::inverse() const {
  Permutation r(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.degree() != degree()) {
    throw InvalidArgument("cannot compose permutations of degree " + std::to_string(degree()) +
                          " and " + std::to_string(other.degree()));
  }
  Permutation r(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = other.images_[images_[i]];
  return r;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cycle;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cycle.push_back(static_cast<Point>(j));
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::size_t Permutation::hash() const noexcept {
  // FNV-1a over the image words
  std::size_t h = 1469598103934665603ull;
  for (Point v : images_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }

std::vector<Point> fixed_points(const Permutation& a) { return a.fixed_points(); }

std::uint64_t element_order(const Permutation& a) { return a.order(); }

Permutation conjugate(const Permutation& a, const Permutation& by) { return by.inverse() * a * by; }

bool intersects(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree()) throw InvalidArgument("degree mismatch in intersects");
  for (std::size_t i = 0; i < x.degree(); ++i) {
    if (x[i] == y[i]) return true;
  }
  return false;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  if (degree == 0 || degree > kMaxDegree) {
    throw ParseError("degree must be in 1..65535, got " + std::to_string(degree));
  }
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) != 0)) ++pos;
  };
  auto token_at = [&](std::size_t at) {
    std::size_t end = at;
    while (end < text.size() && text[end] != ' ' && text[end] != ')' && text[end] != '(') ++end;
    return std::string(text.substr(at, std::max<std::size_t>(end - at, 1)));
  };

  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '(' at token '" + token_at(pos) + "'");
    ++pos;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(text[pos])) == 0) {
        throw ParseError("unexpected token '" + token_at(pos) + "'");
      }
      const std::size_t start = pos;
      std::size_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > kMaxDegree) break;
        ++pos;
      }
      const std::string tok(text.substr(start, pos - start));
      if (value >= degree) {
        throw ParseError("point '" + tok + "' is out of range for degree " + std::to_string(degree));
      }
      if (used[value]) throw ParseError("point '" + tok + "' is repeated");
      used[value] = true;
      cycle.push_back(value);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = static_cast<Point>(cycle[(i + 1) % cycle.size()]);
    }
    skip_space();
  }
  return Permutation::from_images(std::span<const Point>(images));
}

std::string format_cycles(const Permutation& a) {
  const auto cs = a.cycles();
  if (cs.empty()) return "()";
  std::ostringstream out;
  for (const auto& c : cs) {
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i != 0) out << ' ';
      out << c[i];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace ekr
