#pragma once

// Permutation groups acting on {0..n-1}. Base point is always 0.

#include <cstdint>
#include <vector>

#include "ekr/group.hpp"
#include "ekr/permutation.hpp"

namespace ekr {

using PermGroup = Group<Permutation>;

class Action {
 public:
  Action(std::size_t degree, std::vector<Permutation> generators);
  explicit Action(PermGroup group);

  std::size_t degree() const noexcept { return group_.identity().degree(); }
  const PermGroup& group() const noexcept { return group_; }
  const std::vector<Permutation>& generators() const noexcept { return group_.generators(); }
  const ElementSet<Permutation>& elements(std::size_t cap = kDefaultEnumerationCap) const {
    return group_.elements(cap);
  }
  std::uint64_t order(std::size_t cap = kDefaultEnumerationCap) const { return group_.order(cap); }

 private:
  PermGroup group_;
};

std::vector<std::vector<Point>> orbits(const std::vector<Permutation>& generators, std::size_t degree);
std::vector<std::vector<Point>> orbits(const Action& action);
bool is_transitive(const Action& action);
/// Orbit of one point, in discovery order.
std::vector<Point> orbit(const std::vector<Permutation>& generators, std::size_t degree, Point start);

PermGroup point_stabilizer(const Action& action, std::size_t point, std::size_t cap = kDefaultEnumerationCap);

struct BlockQuotient {
  Action blocks;                          // induced action, blocks ordered by least point
  PermGroup kernel;                       // elements fixing every block
  std::vector<std::vector<Point>> block_list;
  std::vector<std::size_t> block_of;      // point -> block index
};

/// Induced action on the orbits of a normal subgroup, plus its kernel.
BlockQuotient quotient_on_blocks(const Action& action, const PermGroup& normal,
                                 std::size_t cap = kDefaultEnumerationCap);
Permutation block_image(const BlockQuotient& q, const Permutation& g);

struct FrobeniusInfo {
  bool frobenius = false;
  std::vector<Permutation> kernel;  // identity and all derangements
  bool kernel_closed = false;
};

/// Frobenius test: transitive, nontrivial stabiliser, and no non-identity
/// element fixes two points.
FrobeniusInfo is_frobenius(const Action& action, std::size_t cap = kDefaultEnumerationCap);

/// Permutation action of G on the right cosets of H.
template <GroupElement E>
Action coset_action(const Group<E>& g, const Group<E>& h, std::size_t cap = kDefaultEnumerationCap) {
  CosetAction<E> ca(g.generators(), h, kMaxDegree, cap);
  return Action(ca.degree(), ca.generator_images());
}

}  // namespace ekr
