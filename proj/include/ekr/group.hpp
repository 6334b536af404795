#pragma once

// Brute-force finite groups over any element carrier: closure enumeration,
// centres, cosets and coset actions. No Schreier-Sims; everything here is
// exhaustive and meant for groups of at most a few million elements.

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ekr/error.hpp"
#include "ekr/permutation.hpp"

namespace ekr {

template <class E>
concept GroupElement = std::copyable<E> && requires(const E& a, const E& b) {
  { a * b } -> std::convertible_to<E>;
  { a.inverse() } -> std::convertible_to<E>;
  { a == b } -> std::convertible_to<bool>;
  { std::hash<E>{}(a) } -> std::convertible_to<std::size_t>;
};

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Insertion-ordered set of group elements with hashed lookup.
template <GroupElement E>
class ElementSet {
 public:
  bool insert(const E& e) {
    auto [it, fresh] = index_.try_emplace(e, elements_.size());
    if (fresh) elements_.push_back(e);
    return fresh;
  }
  bool contains(const E& e) const { return index_.find(e) != index_.end(); }
  std::optional<std::size_t> index_of(const E& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<E>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const E& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<E> elements_;
  std::unordered_map<E, std::size_t> index_;
};

/// Closure of `generators` under right multiplication, breadth first from the
/// identity. Throws CapExceeded once more than `cap` elements appear.
template <GroupElement E>
ElementSet<E> enumerate(const E& identity, const std::vector<E>& generators,
                        std::size_t cap = kDefaultEnumerationCap) {
  if (cap == 0) throw InvalidArgument("enumeration cap must be positive");
  ElementSet<E> set;
  set.insert(identity);
  for (std::size_t head = 0; head < set.size(); ++head) {
    const E cur = set[head];
    for (const auto& g : generators) {
      if (set.insert(cur * g) && set.size() > cap) {
        throw CapExceeded("group has more than " + std::to_string(cap) + " elements", set.size() - 1);
      }
    }
  }
  return set;
}

template <GroupElement E>
class Group {
 public:
  Group(E identity, std::vector<E> generators)
      : identity_(std::move(identity)), generators_(std::move(generators)) {}

  /// Subgroup given by its full element list; generators are chosen greedily
  /// in list order. Throws if the list is not closed.
  static Group from_elements(E identity, const std::vector<E>& elements) {
    std::vector<E> gens;
    ElementSet<E> closure;
    closure.insert(identity);
    const std::size_t n = dedup_size(elements, identity);
    try {
      for (const auto& e : elements) {
        if (closure.contains(e)) continue;
        gens.push_back(e);
        closure = enumerate(identity, gens, n);
      }
    } catch (const CapExceeded&) {
      throw InvalidArgument("element list is not closed under multiplication");
    }
    if (closure.size() != n) throw InvalidArgument("element list is not closed under multiplication");
    Group g(std::move(identity), std::move(gens));
    ElementSet<E> ordered;
    ordered.insert(g.identity_);
    for (const auto& e : elements) ordered.insert(e);
    g.cache_ = std::make_shared<const ElementSet<E>>(std::move(ordered));
    return g;
  }

  const E& identity() const noexcept { return identity_; }
  const std::vector<E>& generators() const noexcept { return generators_; }

  const ElementSet<E>& elements(std::size_t cap = kDefaultEnumerationCap) const {
    if (!cache_) cache_ = std::make_shared<const ElementSet<E>>(enumerate(identity_, generators_, cap));
    if (cache_->size() > cap) {
      throw CapExceeded("group has more than " + std::to_string(cap) + " elements", cap);
    }
    return *cache_;
  }
  std::shared_ptr<const ElementSet<E>> shared_elements(std::size_t cap = kDefaultEnumerationCap) const {
    elements(cap);
    return cache_;
  }
  bool enumerated() const noexcept { return cache_ != nullptr; }
  std::uint64_t order(std::size_t cap = kDefaultEnumerationCap) const { return elements(cap).size(); }
  bool contains(const E& e, std::size_t cap = kDefaultEnumerationCap) const { return elements(cap).contains(e); }

 private:
  static std::size_t dedup_size(const std::vector<E>& elements, const E& identity) {
    ElementSet<E> s;
    s.insert(identity);
    for (const auto& e : elements) s.insert(e);
    return s.size();
  }

  E identity_;
  std::vector<E> generators_;
  mutable std::shared_ptr<const ElementSet<E>> cache_;
};

/// All elements commuting with every generator.
template <GroupElement E>
Group<E> centre(const Group<E>& g, std::size_t cap = kDefaultEnumerationCap) {
  std::vector<E> z;
  for (const auto& x : g.elements(cap)) {
    bool central = true;
    for (const auto& s : g.generators()) {
      if (!(x * s == s * x)) {
        central = false;
        break;
      }
    }
    if (central) z.push_back(x);
  }
  return Group<E>::from_elements(g.identity(), z);
}

/// True iff the generators of `n` are normalised by the generators of `g`.
template <GroupElement E>
bool is_normal(const Group<E>& g, const Group<E>& n, std::size_t cap = kDefaultEnumerationCap) {
  const auto& elems = n.elements(cap);
  for (const auto& s : g.generators()) {
    const E si = s.inverse();
    for (const auto& x : n.generators()) {
      if (!elems.contains(si * x * s)) return false;
    }
  }
  return true;
}

/// True iff S s^-1 is a subgroup, i.e. S is a right coset of one.
template <GroupElement E>
bool is_coset_of_subgroup(const std::vector<E>& s) {
  if (s.empty()) throw InvalidArgument("is_coset_of_subgroup needs a nonempty set");
  const E base_inv = s.front().inverse();
  ElementSet<E> t;
  for (const auto& x : s) t.insert(x * base_inv);
  for (const auto& a : t) {
    if (!t.contains(a.inverse())) return false;
    for (const auto& b : t) {
      if (!t.contains(a * b)) return false;
    }
  }
  return true;
}

/// Right multiplication action of G on the right cosets of H.
///
/// Point i is the coset H r_i; point 0 is H. Cosets are discovered breadth
/// first from H applying G's generators in order. Equality Hx = Hy is decided
/// by x y^-1 in H against H's hashed element set, so G itself is never
/// enumerated.
template <GroupElement E>
class CosetAction {
 public:
  CosetAction(std::vector<E> g_generators, const Group<E>& h, std::size_t point_cap = kMaxDegree,
              std::size_t cap = kDefaultEnumerationCap)
      : h_(h.shared_elements(cap)), generators_(std::move(g_generators)) {
    const E& identity = h.identity();
    reps_.push_back(identity);
    inv_reps_.push_back(identity);
    std::vector<std::vector<Point>> images(generators_.size());
    for (std::size_t head = 0; head < reps_.size(); ++head) {
      for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
        const E y = reps_[head] * generators_[gi];
        std::size_t idx = find(y);
        if (idx == kNone) {
          idx = reps_.size();
          if (idx >= point_cap) {
            throw CapExceeded("coset space has more than " + std::to_string(point_cap) + " points", idx);
          }
          reps_.push_back(y);
          inv_reps_.push_back(y.inverse());
        }
        images[gi].push_back(static_cast<Point>(idx));
      }
    }
    for (auto& im : images) generator_images_.push_back(Permutation::from_images(std::span<const Point>(im)));
  }

  std::size_t degree() const noexcept { return reps_.size(); }
  const ElementSet<E>& subgroup() const noexcept { return *h_; }
  const std::vector<E>& representatives() const noexcept { return reps_; }
  const std::vector<E>& generators() const noexcept { return generators_; }
  /// Permutations of the generators, in generator order.
  const std::vector<Permutation>& generator_images() const noexcept { return generator_images_; }

  /// Index i with H g = H r_i.
  std::size_t locate(const E& g) const {
    const std::size_t idx = find(g);
    if (idx == kNone) throw InvalidArgument("element does not lie in the acting group");
    return idx;
  }

  Permutation realize(const E& g) const {
    std::vector<Point> im(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) im[i] = static_cast<Point>(locate(reps_[i] * g));
    return Permutation::from_images(std::span<const Point>(im));
  }

  /// g fixes H r_i iff r_i g r_i^-1 lies in H.
  bool fixes_point(const E& g, std::size_t i) const { return h_->contains(reps_[i] * g * inv_reps_[i]); }

  std::optional<std::size_t> first_fixed_point(const E& g) const {
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      if (fixes_point(g, i)) return i;
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t find(const E& g) const {
    for (std::size_t j = 0; j < reps_.size(); ++j) {
      if (h_->contains(g * inv_reps_[j])) return j;
    }
    return kNone;
  }

  std::shared_ptr<const ElementSet<E>> h_;
  std::vector<E> generators_;
  std::vector<E> reps_;
  std::vector<E> inv_reps_;
  std::vector<Permutation> generator_images_;
};

}  // namespace ekr
