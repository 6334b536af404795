#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.
// None of these reuse the clique or analyzer code they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ekr/action.hpp"

namespace oracle {

using ekr::Permutation;

// Plain Bron-Kerbosch with Tomita pivoting over the whole intersection graph,
// adjacency recomputed from fixed points.
inline std::size_t max_clique(const std::vector<Permutation>& g) {
  const auto n = g.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool meet = false;
      for (std::size_t pt = 0; pt < g[i].degree() && !meet; ++pt) meet = g[i][pt] == g[j][pt];
      adj[i][j] = adj[j][i] = meet;
    }
  std::size_t best = 0;
  auto bk = [&](auto&& self, std::size_t r, std::vector<std::size_t> p, std::vector<std::size_t> x) -> void {
    if (p.empty() && x.empty()) {
      best = std::max(best, r);
      return;
    }
    if (r + p.size() <= best) return;
    std::size_t pivot = p.empty() ? x.front() : p.front(), most = 0;
    for (auto u : p) {
      std::size_t c = 0;
      for (auto v : p) c += adj[u][v];
      if (c >= most) {
        most = c;
        pivot = u;
      }
    }
    std::vector<std::size_t> cand;
    for (auto v : p)
      if (!adj[pivot][v]) cand.push_back(v);
    for (auto v : cand) {
      std::vector<std::size_t> np, nx;
      for (auto w : p)
        if (adj[v][w]) np.push_back(w);
      for (auto w : x)
        if (adj[v][w]) nx.push_back(w);
      self(self, r + 1, np, nx);
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  bk(bk, 0, all, {});
  return best;
}

inline bool pairwise_derangement_ratios(const std::vector<Permutation>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if ((c[i] * c[j].inverse()).has_fixed_point()) return false;
  return true;
}

// Definition check: exactly one element sends a to b for every (a,b).
inline bool sharply_transitive(const std::vector<Permutation>& c, std::size_t n) {
  if (c.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<int> hits(n, 0);
    for (const auto& x : c) ++hits[x[a]];
    for (auto h : hits)
      if (h != 1) return false;
  }
  return true;
}

struct Psl2Exhaustive {
  std::uint64_t max_order = 0;
  bool weak = false;
  bool strict_weak = false;      // every order-|H| intersecting subgroup fixes a point
  bool strict_weak_iso = false;  // ... has the element-order profile of H
  std::set<std::uint64_t> orders;
};

// Every subgroup of PSL(2,p) is generated by two elements, and up to
// conjugacy the first can be a class representative.
inline Psl2Exhaustive psl2_exhaustive(const ekr::Action& a) {
  const auto& elems = a.elements();
  const std::vector<Permutation> g(elems.begin(), elems.end());
  const auto n = a.degree();
  std::uint64_t stab = 0;
  for (const auto& x : g) stab += x[0] == 0;
  auto profile = [](const std::vector<Permutation>& s) {
    std::multiset<std::uint64_t> m;
    for (const auto& x : s) m.insert(x.order());
    return m;
  };
  std::vector<Permutation> stab_elems;
  for (const auto& x : g)
    if (x[0] == 0) stab_elems.push_back(x);
  const auto h_profile = profile(stab_elems);

  std::vector<Permutation> reps;
  std::unordered_set<Permutation> seen;
  for (const auto& x : g) {
    if (seen.count(x)) continue;
    reps.push_back(x);
    for (const auto& y : g) seen.insert(y.inverse() * x * y);
  }
  Psl2Exhaustive out;
  out.weak = out.strict_weak = out.strict_weak_iso = true;
  std::set<std::vector<Permutation>> done;
  for (const auto& r : reps) {
    if (!r.has_fixed_point()) continue;
    for (const auto& b : g) {
      if (!b.has_fixed_point()) continue;
      // closure with early exit on a derangement
      std::vector<Permutation> s{Permutation(n)};
      std::unordered_set<Permutation> in{Permutation(n)};
      bool ok = true;
      for (std::size_t head = 0; head < s.size() && ok; ++head) {
        for (const auto* gen : {&r, &b}) {
          auto y = s[head] * *gen;
          if (in.insert(y).second) {
            if (!y.has_fixed_point()) {
              ok = false;
              break;
            }
            s.push_back(y);
          }
        }
      }
      if (!ok) continue;
      std::sort(s.begin(), s.end());
      if (!done.insert(s).second) continue;
      out.orders.insert(s.size());
      out.max_order = std::max<std::uint64_t>(out.max_order, s.size());
      if (s.size() > stab) out.weak = out.strict_weak = out.strict_weak_iso = false;
      if (s.size() == stab) {
        bool fixes = false;
        for (std::size_t pt = 0; pt < n && !fixes; ++pt) {
          bool all = true;
          for (const auto& x : s) all = all && x[pt] == pt;
          fixes = all;
        }
        if (!fixes) out.strict_weak = false;
        if (profile(s) != h_profile) out.strict_weak_iso = false;
      }
    }
  }
  return out;
}

}  // namespace oracle
