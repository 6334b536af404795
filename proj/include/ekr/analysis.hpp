#pragma once

// Intersection graphs, exact maximum intersecting sets, sharply transitive
// sets, the Frobenius decomposition and the PSL(2,p) subgroup-order analyzer.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekr/action.hpp"
#include "ekr/constructions.hpp"
#include "ekr/rational.hpp"
#include "json.hpp"

namespace ekr {

inline constexpr std::size_t kDefaultCliqueCap = 2500;

struct AnalysisConfig {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t clique_cap = kDefaultCliqueCap;
  std::size_t enum_limit = 1000;   // maximum cliques listed before giving up
  unsigned workers = 1;
  std::uint64_t node_budget = 20'000'000;  // backtracking nodes for sharply transitive search
};

/// Fixed-size bitset with the handful of operations the clique code needs.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }
  bool any() const;
  std::size_t count() const;
  /// Lowest set bit, or size() when empty.
  std::size_t first() const;
  Bits& operator&=(const Bits& o);
  Bits& and_not(const Bits& o);
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    r &= o;
    return r;
  }
  std::vector<std::size_t> indices() const;
  bool operator==(const Bits& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Vertices are the group elements in enumeration order (identity first);
/// x ~ y iff x != y and x y^-1 fixes a point.
class IntersectionGraph {
 public:
  IntersectionGraph(const Action& action, std::size_t clique_cap = kDefaultCliqueCap,
                    std::size_t enumeration_cap = kDefaultEnumerationCap);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Permutation>& vertices() const noexcept { return vertices_; }
  const Bits& row(std::size_t i) const { return adj_[i]; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
  /// Indices of the non-identity elements with a fixed point (the neighbourhood of 0).
  const std::vector<std::size_t>& connection_set() const noexcept { return connection_; }
  std::size_t index_of(const Permutation& g) const;
  /// Index of vertices[i] * vertices[j]^-1.
  std::size_t ratio(std::size_t i, std::size_t j) const;
  /// Derangement graph row (complement without the diagonal).
  Bits derangement_row(std::size_t i) const;

 private:
  std::vector<Permutation> vertices_;
  std::vector<Bits> adj_;
  std::vector<std::size_t> connection_;
  std::unordered_map<Permutation, std::size_t> index_;
};

struct PairCheck {
  bool ok = true;
  std::size_t first = 0, second = 0;  // violating pair when !ok
};

PairCheck is_intersecting_set(const std::vector<Permutation>& s);
bool is_intersecting_subgroup(const PermGroup& s, std::size_t cap = kDefaultEnumerationCap);
/// Every element of the named subgroup fixes a point; uses the structural
/// check for constructions too large to realise.
StructuralResult intersecting_subgroup_check(const ConstructionResult& c, const std::string& role,
                                             std::size_t cap = kDefaultEnumerationCap);

enum class Verdict { Holds, Fails, NotComputed };
std::string to_string(Verdict v);

struct SharplyTransitiveResult {
  bool found = false;
  bool exhausted = false;  // search space exhausted without success: none exists
  std::vector<Permutation> elements;
  bool is_subgroup = false;
  std::uint64_t nodes = 0;
};

bool is_sharply_transitive(const std::vector<Permutation>& c, std::size_t degree);

struct EkrReport {
  std::size_t degree = 0;
  std::uint64_t group_order = 0;
  std::uint64_t stabilizer_order = 0;
  std::optional<std::uint64_t> max_intersecting;
  std::optional<Rational> rho;
  std::vector<Permutation> witness;
  Verdict ekr = Verdict::NotComputed;
  Verdict strict_ekr = Verdict::NotComputed;
  Verdict weak_ekr = Verdict::NotComputed;
  std::vector<Permutation> strict_witness;  // a maximum set that is not a stabiliser coset
  std::string method;
  std::uint64_t upper_bound = 0;
  std::uint64_t coclique = 0;  // size of the validated derangement clique used for the bound
  std::uint64_t nodes = 0;
  std::optional<SharplyTransitiveResult> sharply;
  nlohmann::json extra = nlohmann::json::object();

  bool rho_at_least_one() const;
  /// rho <= |Omega|/3, vacuous for degree <= 3.
  bool rho_within_third() const;
};

/// Exact maximum clique containing the identity. `seeds` are candidate
/// intersecting sets; they only shortcut the search when they meet the
/// upper bound.
EkrReport max_intersecting(const Action& action, const AnalysisConfig& cfg = {},
                           const std::vector<std::vector<Permutation>>& seeds = {});

struct TaggedSet {
  std::vector<Permutation> elements;
  bool is_coset = false;
  bool is_stabilizer_coset = false;
};

struct MaximumSets {
  std::uint64_t size = 0;
  std::vector<TaggedSet> through_identity;  // every maximum set is a right translate of one of these
  bool exhausted = true;
  std::optional<std::uint64_t> total;  // all maximum sets, when small enough to expand
};

MaximumSets enumerate_maximum_intersecting_sets(const Action& action, std::size_t limit,
                                                const AnalysisConfig& cfg = {});

/// Fills in strict_ekr (and strict_witness) on a report with max_intersecting set.
void strict_ekr_check(const Action& action, EkrReport& report, const AnalysisConfig& cfg = {});

SharplyTransitiveResult find_sharply_transitive(const Action& action, const AnalysisConfig& cfg = {});
std::vector<Permutation> p_group_sharply_transitive(const Action& action,
                                                    std::size_t cap = kDefaultEnumerationCap);
/// Sylow p-subgroup grown by normalising p-elements.
PermGroup sylow_subgroup(const Action& action, std::uint32_t p, std::size_t cap = kDefaultEnumerationCap);
EkrReport prime_power_ekr(const Action& action, const AnalysisConfig& cfg = {});

struct FrobeniusDecomposition {
  bool success = false;
  std::map<std::size_t, std::vector<Permutation>> cells;  // kernel index -> H_c
  std::string failure;
};

FrobeniusDecomposition frobenius_decompose(const Action& action, const std::vector<Permutation>& s,
                                           std::size_t cap = kDefaultEnumerationCap);

// PSL(2,p) analyzer ----------------------------------------------------------

struct Psl2SubgroupType {
  std::string name;
  std::uint64_t order = 0;
  std::vector<std::uint64_t> element_orders;
  unsigned classes = 1;  // conjugacy classes of such subgroups (only tracked where it matters)
};

struct Psl2Verdict {
  std::uint32_t p = 0;
  Psl2Family family = Psl2Family::Borel;
  std::string stabilizer;
  std::uint64_t stabilizer_order = 0;
  std::uint64_t degree = 0;
  std::vector<std::uint64_t> stabilizer_element_orders;
  std::vector<Psl2SubgroupType> intersecting;  // catalogue types that are intersecting, largest first
  std::uint64_t max_intersecting_subgroup = 0;
  std::vector<std::string> maximum_types;
  bool weak_ekr = false;
  bool strict_weak_ekr = false;             // order-|H| intersecting subgroups all conjugate to H
  bool strict_weak_ekr_isomorphism = false;  // ... all isomorphic to H
  bool exceptional_prime = false;
  bool table_weak_ekr = false;  // tabulated verdict for this (p, family)
  bool table_strict_weak_ekr = false;
  std::string ekr;         // "holds" / "not-computed"
  std::string ekr_basis;
  std::string strict_ekr;  // "holds" / "not-computed"
  std::string strict_ekr_basis;
};

inline constexpr std::uint32_t kPsl2ExceptionalPrimes[] = {11, 13, 23, 29, 31, 59, 61};

/// Arithmetic only: nothing is enumerated.
Psl2Verdict psl2_analyze(std::uint32_t p, Psl2Family family);
std::vector<Psl2SubgroupType> psl2_subgroup_catalogue(std::uint32_t p);

// reports ------------------------------------------------------------------

nlohmann::json to_json(const EkrReport& r);
nlohmann::json to_json(const Psl2Verdict& v);
nlohmann::json to_json(const MaximumSets& m);

std::vector<std::string> cycle_strings(const std::vector<Permutation>& s);

/// Checks accepted by analyze(): max, strict, sharply, frobenius, prime-power, subgroups.
struct AnalyzeRequest {
  std::vector<std::string> checks;
};

struct AnalyzeOutcome {
  nlohmann::json report;
  bool not_computed = false;  // some requested check was cut short by a cap
};

AnalyzeOutcome analyze(const ConstructionResult& c, const std::vector<std::string>& checks,
                       const AnalysisConfig& cfg = {});
/// Group description: {"degree": n, "generators": ["(0 1 2)", ...], "subgroups": [...]}.
ConstructionResult construction_from_json(const nlohmann::json& j);
std::vector<std::string> parse_checks(const std::string& csv);

}  // namespace ekr
