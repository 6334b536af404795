#include <algorithm>
#include <set>

#include "ekr/analysis.hpp"

namespace ekr {

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

std::vector<std::uint64_t> merge(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool pm1(std::uint32_t p, std::uint32_t m) { return p % m == 1 || p % m == m - 1; }

std::string stabilizer_name(std::uint32_t p, Psl2Family family) {
  switch (family) {
    case Psl2Family::Borel: return "Z" + std::to_string(p) + ":Z" + std::to_string((p - 1) / 2);
    case Psl2Family::DMinus: return "D" + std::to_string(p - 1);
    case Psl2Family::DPlus: return "D" + std::to_string(p + 1);
    case Psl2Family::A4: return "A4";
    case Psl2Family::S4: return "S4";
    case Psl2Family::A5: return "A5";
  }
  return "";
}

}  // namespace

// Subgroup types of PSL(2,p), p >= 5 prime, with their element orders.
// Dihedral D_2m is written by its order 2m.
std::vector<Psl2SubgroupType> psl2_subgroup_catalogue(std::uint32_t p) {
  if (p < 5) throw InvalidArgument("PSL(2,p) catalogue needs p >= 5");
  const std::uint64_t m1 = (p - 1) / 2, m2 = (p + 1) / 2;
  std::vector<Psl2SubgroupType> out;
  std::set<std::uint64_t> cyclic;
  for (auto d : divisors(m1)) cyclic.insert(d);
  for (auto d : divisors(m2)) cyclic.insert(d);
  cyclic.insert(p);
  for (auto l : cyclic) out.push_back({"Z" + std::to_string(l), l, divisors(l), 1});
  for (auto l : divisors(m1)) {
    if (l == 1) continue;
    out.push_back({"Z" + std::to_string(p) + ":Z" + std::to_string(l), p * l, merge({1, p}, divisors(l)), 1});
  }
  std::set<std::uint64_t> dihedral;
  for (auto d : divisors(m1))
    if (d >= 2) dihedral.insert(d);
  for (auto d : divisors(m2))
    if (d >= 2) dihedral.insert(d);
  for (auto m : dihedral) {
    const unsigned classes = m == 2 && pm1(p, 8) ? 2 : 1;
    out.push_back({"D" + std::to_string(2 * m), 2 * m, merge({1, 2}, divisors(m)), classes});
  }
  out.push_back({"A4", 12, {1, 2, 3}, pm1(p, 8) ? 2u : 1u});
  if (pm1(p, 8)) out.push_back({"S4", 24, {1, 2, 3, 4}, 2});
  if (pm1(p, 10)) out.push_back({"A5", 60, {1, 2, 3, 5}, 2});
  return out;
}

Psl2Verdict psl2_analyze(std::uint32_t p, Psl2Family family) {
  if (!psl2_family_admissible(p, family))
    throw InvalidArgument(to_string(family) + " is not a maximal subgroup of PSL(2," + std::to_string(p) + ")");
  Psl2Verdict v;
  v.p = p;
  v.family = family;
  v.stabilizer = stabilizer_name(p, family);
  const auto cat = psl2_subgroup_catalogue(p);
  const auto h = std::find_if(cat.begin(), cat.end(), [&](const auto& t) { return t.name == v.stabilizer; });
  if (h == cat.end()) throw InternalError("stabilizer type missing from catalogue: " + v.stabilizer);
  v.stabilizer_order = h->order;
  v.stabilizer_element_orders = h->element_orders;
  v.degree = std::uint64_t{p} * (std::uint64_t{p} * p - 1) / 2 / h->order;

  // a subgroup is intersecting iff its element orders occur in the stabiliser,
  // since cyclic subgroups of equal order are conjugate
  const std::set<std::uint64_t> allowed(h->element_orders.begin(), h->element_orders.end());
  for (const auto& t : cat) {
    if (std::all_of(t.element_orders.begin(), t.element_orders.end(), [&](auto o) { return allowed.count(o) > 0; }))
      v.intersecting.push_back(t);
  }
  std::stable_sort(v.intersecting.begin(), v.intersecting.end(),
                   [](const auto& a, const auto& b) { return a.order > b.order; });
  v.max_intersecting_subgroup = v.intersecting.front().order;
  for (const auto& t : v.intersecting)
    if (t.order == v.max_intersecting_subgroup) v.maximum_types.push_back(t.name);

  v.weak_ekr = v.max_intersecting_subgroup <= v.stabilizer_order;
  bool other_type = false;
  for (const auto& t : v.intersecting)
    if (t.order == v.stabilizer_order && t.name != v.stabilizer) other_type = true;
  v.strict_weak_ekr_isomorphism = v.weak_ekr && !other_type;
  // a second conjugacy class of the stabiliser type is intersecting too
  v.strict_weak_ekr = v.strict_weak_ekr_isomorphism && h->classes == 1;

  v.exceptional_prime = std::find(std::begin(kPsl2ExceptionalPrimes), std::end(kPsl2ExceptionalPrimes), p) !=
                        std::end(kPsl2ExceptionalPrimes);
  const bool d30 = (p == 29 && family == Psl2Family::DPlus) || (p == 31 && family == Psl2Family::DMinus);
  v.table_weak_ekr = !d30;
  v.table_strict_weak_ekr = !(d30 || ((p == 13 || p == 61) && family == Psl2Family::DMinus) ||
                              ((p == 11 || p == 23 || p == 59) && family == Psl2Family::DPlus));

  v.ekr = "not-computed";
  v.strict_ekr = "not-computed";
  if (family == Psl2Family::Borel) {
    v.ekr = "holds";
    v.strict_ekr = "holds";
    v.ekr_basis = v.strict_ekr_basis = "2-transitive action on the projective line; cited strict-EKR result";
  } else if (family == Psl2Family::DPlus && p % 4 == 3) {
    // Z_p:Z_(p-1)/2 has order p(p-1)/2 = degree and element orders prime to p+1
    v.ekr = "holds";
    v.ekr_basis = "regular subgroup Z" + std::to_string(p) + ":Z" + std::to_string((p - 1) / 2);
  }
  return v;
}

}  // namespace ekr
