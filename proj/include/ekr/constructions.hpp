#pragma once

// Builders for the concrete group actions analysed by this library, and a
// handful of standard fixtures (symmetric, dihedral, affine, p-group wreaths).
//
// Every builder returns a permutation action with base point 0 plus the
// distinguished subgroups as permutation generators in that action.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekr/action.hpp"
#include "ekr/linear.hpp"
#include "json.hpp"

namespace ekr {

struct NamedSubgroup {
  std::string role;   // "H", "S", "K", "C", ...
  std::string label;  // structure, e.g. "F:E^x"
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // filled for sets that are not subgroups
  bool is_set = false;
  std::uint64_t order = 0;
};

struct ExpectedMetric {
  std::string name;
  std::string value;
  std::string basis;  // how the value is obtained
};

struct StructuralResult {
  bool holds = false;
  std::uint64_t checked = 0;
  std::string counterexample;
};

struct AuxiliaryAction {
  std::string name;
  Action action;
  std::vector<NamedSubgroup> subgroups;
};

struct ConstructionResult {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  Action action{1, {}};
  std::optional<std::uint64_t> group_order;
  std::uint64_t stabilizer_order = 0;
  std::vector<NamedSubgroup> subgroups;
  std::vector<ExpectedMetric> metrics;
  std::vector<AuxiliaryAction> auxiliary;
  nlohmann::json carrier = nlohmann::json::object();
  /// Set only when the group is too large to enumerate as permutations:
  /// checks that every element of the named subgroup fixes a coset, using
  /// conjugation into H instead of materialised permutations.
  std::function<StructuralResult(const std::string& role)> structural_intersecting;

  bool has_subgroup(const std::string& role) const;
  const NamedSubgroup& subgroup(const std::string& role) const;
  const ExpectedMetric* metric(const std::string& name) const;
  bool enumerable(std::size_t cap = kDefaultEnumerationCap) const {
    return !group_order || *group_order <= cap;
  }
};

// -- builders ---------------------------------------------------------------

ConstructionResult build_nobo(std::uint32_t p, std::uint32_t d, std::size_t cap = kDefaultEnumerationCap);
ConstructionResult build_agl_example(std::uint32_t p, std::uint32_t d, std::size_t cap = kDefaultEnumerationCap);
ConstructionResult build_asc(std::uint32_t f);
ConstructionResult build_table1(int row, std::size_t cap = kDefaultEnumerationCap);
/// Linear generators used by table1 rows 1-4: i, j, the SL(2,3)/SL(2,5)
/// completion, then b (row 2) or z (rows 3-4).
std::vector<Mat2> table1_linear_generators(int row);

enum class Psl2Family { Borel, DMinus, DPlus, A4, S4, A5 };
std::string to_string(Psl2Family f);
Psl2Family parse_psl2_family(const std::string& s);
/// Maximal-subgroup conditions for PSL(2,p), as listed in the subgroup catalogue.
bool psl2_family_admissible(std::uint32_t p, Psl2Family family);
ConstructionResult build_psl2(std::uint32_t p, Psl2Family family, std::size_t cap = kDefaultEnumerationCap);

/// PGL(2,q) on the cosets of a dihedral subgroup of order 2(q+1), with the
/// transversal C. With `psl` set (needs q = 3 mod 4) the PSL(2,q) branch.
ConstructionResult build_pglexam(std::uint32_t q, bool psl = false);
ConstructionResult build_sl23();

// wreath products in product action

/// Element (f; m) of G wr Z_l: f is a tuple of base permutations.
/// (f1;m1)(f2;m2) = (j -> f1(j) f2(j+m1); m1+m2), acting on tuples by
/// moving coordinate j to j+m and applying f(j) there.
struct WreathElement {
  std::vector<Permutation> f;
  std::uint32_t m = 0;

  WreathElement operator*(const WreathElement& o) const;
  WreathElement inverse() const;
  bool operator==(const WreathElement& o) const = default;
  std::size_t hash() const noexcept;
};

/// Permutation of Omega^l (tuples indexed lexicographically, coordinate 0
/// most significant) induced by a wreath element.
Permutation wreath_realize(const WreathElement& w, std::size_t base_degree);

struct WreathLift {
  Action action;
  /// Lift of each requested base subgroup: its generators in coordinate 0 plus the shift.
  std::vector<std::vector<Permutation>> lifted;
};
WreathLift wreath_product(const Action& base, std::uint32_t l,
                          const std::vector<std::vector<Permutation>>& subgroups = {});
/// Sym(n) wr Z_l (S = Sym(n-1) lifted) or the pair action of PGL(2,2^f) wr Z_l.
ConstructionResult build_wreath(const std::string& base, std::uint32_t param, std::uint32_t l);

// fixtures

ConstructionResult symmetric_natural(std::size_t n);
ConstructionResult dihedral_natural(std::size_t n);  // D_2n on n points
ConstructionResult cyclic_regular(std::size_t n);
ConstructionResult z4xz2_regular();
ConstructionResult agl1_natural(std::uint32_t p, std::uint32_t k);
/// Iterated wreath Z_p wr ... wr Z_p on p^k points (a Sylow p-subgroup of Sym(p^k)).
ConstructionResult sylow_wreath(std::uint32_t p, std::uint32_t k);
/// PSL(2,q) on the q+1 points of PG(1,q).
ConstructionResult psl2_natural(std::uint32_t p, std::uint32_t k);

/// Dispatch by name with JSON parameters (the CLI's entry point).
ConstructionResult construct(const std::string& name, const nlohmann::json& params,
                             std::size_t cap = kDefaultEnumerationCap);
std::vector<std::string> construction_names();

/// Group-description JSON ("schema": "ekr/1"): degree, generators in cycle
/// notation, named subgroups, expected metrics.
nlohmann::json to_json(const ConstructionResult& c);

}  // namespace ekr

template <>
struct std::hash<ekr::WreathElement> {
  std::size_t operator()(const ekr::WreathElement& w) const noexcept { return w.hash(); }
};
