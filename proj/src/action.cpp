#include "ekr/action.hpp"

#include <algorithm>

namespace ekr {

Action::Action(std::size_t degree, std::vector<Permutation> generators)
    : group_(Permutation(degree), std::move(generators)) {
  for (const auto& g : group_.generators()) {
    if (g.degree() != degree) {
      throw InvalidArgument("generator of degree " + std::to_string(g.degree()) +
                            " in an action of degree " + std::to_string(degree));
    }
  }
}

Action::Action(PermGroup group) : group_(std::move(group)) {
  for (const auto& g : group_.generators()) {
    if (g.degree() != degree()) throw InvalidArgument("generators of mixed degree");
  }
}

std::vector<Point> orbit(const std::vector<Permutation>& generators, std::size_t degree, Point start) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{start};
  seen[start] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators) {
      const Point y = g[out[head]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

std::vector<std::vector<Point>> orbits(const std::vector<Permutation>& generators, std::size_t degree) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree, false);
  for (std::size_t i = 0; i < degree; ++i) {
    if (seen[i]) continue;
    auto o = orbit(generators, degree, static_cast<Point>(i));
    for (auto p : o) seen[p] = true;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::vector<Point>> orbits(const Action& action) {
  return orbits(action.generators(), action.degree());
}

bool is_transitive(const Action& action) {
  return orbit(action.generators(), action.degree(), 0).size() == action.degree();
}

PermGroup point_stabilizer(const Action& action, std::size_t point, std::size_t cap) {
  if (point >= action.degree()) {
    throw InvalidArgument("point " + std::to_string(point) + " out of range for degree " +
                          std::to_string(action.degree()));
  }
  std::vector<Permutation> stab;
  for (const auto& g : action.elements(cap)) {
    if (g[point] == point) stab.push_back(g);
  }
  return PermGroup::from_elements(Permutation(action.degree()), stab);
}

BlockQuotient quotient_on_blocks(const Action& action, const PermGroup& normal, std::size_t cap) {
  if (!is_normal(action.group(), normal, cap)) throw InvalidArgument("subgroup is not normal");
  auto blocks = orbits(normal.generators(), action.degree());
  const std::size_t size = blocks.front().size();
  for (const auto& b : blocks) {
    if (b.size() != size) throw InternalError("normal subgroup has orbits of unequal size");
  }
  std::vector<std::size_t> block_of(action.degree());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (auto p : blocks[i]) block_of[p] = i;
  }
  auto induced = [&](const Permutation& g) {
    std::vector<Point> im(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) im[i] = static_cast<Point>(block_of[g[blocks[i][0]]]);
    return Permutation::from_images(std::span<const Point>(im));
  };
  std::vector<Permutation> gens;
  for (const auto& g : action.generators()) gens.push_back(induced(g));
  std::vector<Permutation> kernel;
  for (const auto& g : action.elements(cap)) {
    if (induced(g).is_identity()) kernel.push_back(g);
  }
  return BlockQuotient{Action(blocks.size(), std::move(gens)),
                       PermGroup::from_elements(Permutation(action.degree()), kernel), std::move(blocks),
                       std::move(block_of)};
}

Permutation block_image(const BlockQuotient& q, const Permutation& g) {
  std::vector<Point> im(q.block_list.size());
  for (std::size_t i = 0; i < q.block_list.size(); ++i) {
    im[i] = static_cast<Point>(q.block_of[g[q.block_list[i][0]]]);
  }
  return Permutation::from_images(std::span<const Point>(im));
}

FrobeniusInfo is_frobenius(const Action& action, std::size_t cap) {
  if (!is_transitive(action)) throw InvalidArgument("Frobenius test needs a transitive action");
  FrobeniusInfo info;
  bool stabilizer_nontrivial = false;
  bool two_fixed = false;
  for (const auto& g : action.elements(cap)) {
    if (g.is_identity()) {
      info.kernel.push_back(g);
      continue;
    }
    const std::size_t f = g.fixed_point_count();
    if (f == 0) info.kernel.push_back(g);
    if (f >= 1) stabilizer_nontrivial = true;
    if (f >= 2) two_fixed = true;
  }
  info.frobenius = action.degree() >= 2 && stabilizer_nontrivial && !two_fixed;
  ElementSet<Permutation> k;
  for (const auto& x : info.kernel) k.insert(x);
  info.kernel_closed = true;
  for (const auto& a : info.kernel) {
    for (const auto& b : info.kernel) {
      if (!k.contains(a * b)) {
        info.kernel_closed = false;
        break;
      }
    }
    if (!info.kernel_closed) break;
  }
  return info;
}

}  // namespace ekr
