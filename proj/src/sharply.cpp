#include <algorithm>
#include <unordered_map>

#include "ekr/analysis.hpp"

namespace ekr {

bool is_sharply_transitive(const std::vector<Permutation>& c, std::size_t degree) {
  if (c.size() != degree) return false;
  // exactly one element maps 0 to each point, and all ratios are derangements
  std::vector<bool> hit(degree, false);
  for (const auto& x : c) {
    if (x.degree() != degree || hit[x[0]]) return false;
    hit[x[0]] = true;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (intersects(c[i], c[j])) return false;
  return true;
}

namespace {

struct Backtrack {
  const IntersectionGraph& g;
  std::size_t degree;
  std::vector<Bits> der;    // derangement rows
  std::vector<Bits> fibre;  // elements mapping 0 to each point
  std::vector<std::size_t> chosen;
  std::vector<bool> filled;
  std::uint64_t nodes = 0;
  std::uint64_t budget;
  bool out_of_budget = false;

  bool run(const Bits& cand) {
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    // first fail: the open fibre with the fewest candidates
    std::size_t pick = degree, fewest = static_cast<std::size_t>(-1);
    for (std::size_t b = 0; b < degree; ++b) {
      if (filled[b]) continue;
      const auto n = (cand & fibre[b]).count();
      if (n < fewest) {
        fewest = n;
        pick = b;
        if (n == 0) return false;
      }
    }
    if (pick == degree) return true;
    filled[pick] = true;
    for (auto c : (cand & fibre[pick]).indices()) {
      chosen.push_back(c);
      if (run(cand & der[c])) return true;
      chosen.pop_back();
      if (out_of_budget) break;
    }
    filled[pick] = false;
    return false;
  }
};

}  // namespace

SharplyTransitiveResult find_sharply_transitive(const Action& action, const AnalysisConfig& cfg) {
  if (!is_transitive(action)) throw InvalidArgument("sharply transitive sets need a transitive action");
  const auto n = action.degree();
  SharplyTransitiveResult r;
  const auto& elems = action.elements(cfg.enumeration_cap);
  // a regular cyclic subgroup is the cheapest certificate
  for (const auto& x : elems) {
    if (x.order() != n) continue;
    std::vector<Permutation> pow{Permutation(n)};
    for (std::size_t k = 1; k < n; ++k) pow.push_back(pow.back() * x);
    if (is_sharply_transitive(pow, n)) {
      r.found = true;
      r.is_subgroup = true;
      r.elements = std::move(pow);
      std::sort(r.elements.begin(), r.elements.end());
      return r;
    }
  }
  const IntersectionGraph g(action, cfg.clique_cap, cfg.enumeration_cap);
  Backtrack bt{g, n, {}, {}, {}, std::vector<bool>(n, false), 0, cfg.node_budget};
  bt.der.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) bt.der.push_back(g.derangement_row(i));
  bt.fibre.assign(n, Bits(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) bt.fibre[g.vertices()[i][0]].set(i);
  // a right translate of a sharply transitive set is one, so the identity can be fixed
  bt.filled[0] = true;
  bt.chosen.push_back(0);
  const bool ok = bt.run(bt.der[0]);
  r.nodes = bt.nodes;
  if (!ok) {
    r.exhausted = !bt.out_of_budget;
    return r;
  }
  for (auto i : bt.chosen) r.elements.push_back(g.vertices()[i]);
  std::sort(r.elements.begin(), r.elements.end());
  if (!is_sharply_transitive(r.elements, n)) throw InternalError("sharply transitive search returned an invalid set");
  r.found = true;
  r.is_subgroup = is_coset_of_subgroup(r.elements);
  return r;
}

namespace {

std::uint32_t prime_of_power(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? static_cast<std::uint32_t>(p) : 0;
}

}  // namespace

std::vector<Permutation> p_group_sharply_transitive(const Action& action, std::size_t cap) {
  const auto n = action.degree();
  if (n == 1) return {Permutation(1)};
  if (!is_transitive(action)) throw InvalidArgument("p_group_sharply_transitive: intransitive action");
  const auto order = action.order(cap);
  if (!prime_of_power(order)) throw InvalidArgument("p_group_sharply_transitive: group order " +
                                                    std::to_string(order) + " is not a prime power");
  const auto z = centre(action.group(), cap);
  std::vector<Permutation> out;
  if (z.order() == n) {
    out = z.elements().elements();
  } else {
    // the centre is semiregular: recurse on its orbits
    const auto q = quotient_on_blocks(action, z, cap);
    const auto c0 = p_group_sharply_transitive(q.blocks, cap);
    std::unordered_map<Permutation, Permutation> rep;
    for (const auto& g : action.elements(cap)) rep.try_emplace(block_image(q, g), g);
    for (const auto& r : c0) {
      const auto& g = rep.at(r);
      for (const auto& x : z.elements()) out.push_back(g * x);
    }
  }
  std::sort(out.begin(), out.end());
  if (!is_sharply_transitive(out, n)) throw InternalError("p-group construction produced an invalid set");
  return out;
}

PermGroup sylow_subgroup(const Action& action, std::uint32_t p, std::size_t cap) {
  const auto& elems = action.elements(cap);
  const auto order = elems.size();
  std::vector<Permutation> pelts;
  for (const auto& x : elems) {
    auto o = x.order();
    while (o % p == 0) o /= p;
    if (o == 1 && !x.is_identity()) pelts.push_back(x);
  }
  std::vector<Permutation> gens;
  PermGroup current(Permutation(action.degree()), gens);
  while ((order / current.order()) % p == 0) {
    bool grown = false;
    for (const auto& x : pelts) {
      if (current.contains(x)) continue;
      const auto xi = x.inverse();
      bool normalises = true;
      for (const auto& g : gens) normalises = normalises && current.contains(xi * g * x);
      if (!normalises) continue;
      gens.push_back(x);
      current = PermGroup(Permutation(action.degree()), gens);
      grown = true;
      break;
    }
    if (!grown) throw InternalError("Sylow growth stalled");
  }
  return current;
}

EkrReport prime_power_ekr(const Action& action, const AnalysisConfig& cfg) {
  const auto n = action.degree();
  const auto p = prime_of_power(n);
  if (!p) throw InvalidArgument("degree " + std::to_string(n) + " is not a prime power");
  if (!is_transitive(action)) throw InvalidArgument("prime_power_ekr needs a transitive action");
  const auto sylow = sylow_subgroup(action, p, cfg.enumeration_cap);
  const Action pa(sylow);
  if (!is_transitive(pa)) throw InternalError("Sylow subgroup is not transitive");
  const auto c = p_group_sharply_transitive(pa, cfg.enumeration_cap);

  EkrReport r;
  r.degree = n;
  r.group_order = action.order(cfg.enumeration_cap);
  const auto stab = point_stabilizer(action, 0, cfg.enumeration_cap);
  r.stabilizer_order = stab.order();
  r.max_intersecting = r.stabilizer_order;
  r.rho = Rational(1);
  r.ekr = Verdict::Holds;
  r.method = "sharply-transitive-certificate";
  r.witness = stab.elements().elements();
  std::sort(r.witness.begin(), r.witness.end());
  r.upper_bound = r.group_order / n;
  r.coclique = n;
  SharplyTransitiveResult s;
  s.found = true;
  s.elements = c;
  s.is_subgroup = is_coset_of_subgroup(c);
  r.sharply = s;
  r.extra["sylow_order"] = sylow.order();
  r.extra["prime"] = p;
  return r;
}

FrobeniusDecomposition frobenius_decompose(const Action& action, const std::vector<Permutation>& s, std::size_t cap) {
  const auto info = is_frobenius(action, cap);
  if (!info.frobenius) throw InvalidArgument("frobenius_decompose needs a Frobenius group");
  FrobeniusDecomposition out;
  if (!info.kernel_closed) {
    out.failure = "kernel is not closed, H K != G";
    return out;
  }
  // the kernel is regular: index its elements by the image of 0
  const auto n = action.degree();
  std::vector<std::size_t> by_image(n, n);
  for (std::size_t k = 0; k < info.kernel.size(); ++k) {
    const auto img = info.kernel[k][0];
    if (by_image[img] != n) {
      out.failure = "kernel is not regular";
      return out;
    }
    by_image[img] = k;
  }
  std::unordered_map<Permutation, std::size_t> owner;
  for (const auto& x : s) {
    const auto k = by_image[x[0]];
    if (k == n) {
      out.failure = "no kernel element maps 0 to " + std::to_string(x[0]);
      return out;
    }
    const auto h = x * info.kernel[k].inverse();
    if (h[0] != 0) throw InternalError("h c factorisation failed");
    auto [it, fresh] = owner.try_emplace(h, k);
    if (!fresh && it->second != k) {
      out.failure = format_cycles(h) + " lies in two cells";
      out.cells[k].push_back(h);
      return out;
    }
    out.cells[k].push_back(h);
  }
  out.success = true;
  return out;
}

}  // namespace ekr
