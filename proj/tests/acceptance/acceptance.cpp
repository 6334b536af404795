// Acceptance suite: one line per criterion, with its time limit.
//
//   acceptance [--known-failure N]...
//
// Exit status is 0 when the failing criteria are exactly the listed ones.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ekr/analysis.hpp"
#include "oracles.hpp"

using namespace ekr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED: ") + what;
    }
  }
  void info(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

// every report produced by the suite, for criterion 13
std::vector<EkrReport> g_reports;

EkrReport exact_max(const Action& a, const AnalysisConfig& cfg = {}) {
  auto r = max_intersecting(a, cfg);
  g_reports.push_back(r);
  return r;
}

PermGroup sub(const ConstructionResult& c, const std::string& role) {
  return PermGroup(Permutation(c.action.degree()), c.subgroup(role).generators);
}

std::string n(std::uint64_t x) { return std::to_string(x); }

bool every_element_fixes_a_point(const PermGroup& g) {
  for (const auto& x : g.elements()) {
    bool fixes = false;
    for (std::size_t i = 0; i < x.degree() && !fixes; ++i) fixes = x[i] == i;
    if (!fixes) return false;
  }
  return true;
}

Outcome c1() {
  Outcome o;
  for (auto [p, d, q] : {std::tuple{2u, 2u, 4u}, std::tuple{5u, 1u, 5u}}) {
    const auto c = build_nobo(p, d);
    const auto s = sub(c, "S");
    const auto r = exact_max(c.action);
    const std::uint64_t deg = q * (q + 1);
    o.require(c.action.degree() == deg, "degree q(q+1)");
    o.require(is_intersecting_subgroup(s), "S intersecting");
    o.require(r.group_order == (q == 4 ? 240u : 600u), "vertex count");
    o.require(*r.max_intersecting == s.order(), "max = |S|");
    o.require(*r.rho == Rational(q), "rho = q");
    o.require(r.rho->square_cmp(deg) == std::strong_ordering::less, "q < sqrt(q(q+1))");
    o.info("q=" + n(q) + ": degree " + n(c.action.degree()) + ", " + n(r.group_order) + " vertices, max " +
           n(*r.max_intersecting) + " = |S| " + n(s.order()) + ", rho " + r.rho->str());
  }
  return o;
}

Outcome c2() {
  Outcome o;
  const auto c = build_table1(1);
  const auto k = sub(c, "K").order(), h = sub(c, "H").order();
  const auto r = exact_max(c.action);
  o.require(c.action.degree() == 30, "degree 30");
  o.require(k == 10 * h, "|K|/|H| = 10");
  o.require(*r.max_intersecting == 200, "max 200");
  o.require(*r.rho == Rational(30, 3), "rho = |Omega|/3");
  o.info("degree " + n(c.action.degree()) + ", |K|/|H| " + Rational(k, h).str() + ", max " + n(*r.max_intersecting) +
         ", rho " + r.rho->str());
  return o;
}

Outcome c3() {
  Outcome o;
  const auto c = build_table1(5);
  const auto r = exact_max(c.action);
  o.require(c.action.degree() == 18, "degree 18");
  o.require(*r.max_intersecting == 108, "max 108");
  o.require(*r.rho == Rational(6) && *r.rho == Rational(18, 3), "rho 6 = |Omega|/3");
  o.require(r.rho->square_cmp(18) == std::strong_ordering::greater, "rho > sqrt(18)");
  o.info("degree 18, max " + n(*r.max_intersecting) + ", rho " + r.rho->str());
  return o;
}

Outcome c4() {
  Outcome o;
  const auto c = build_table1(3);
  const auto k = intersecting_subgroup_check(c, "K");
  const auto ko = c.subgroup("K").order, ho = c.subgroup("H").order;
  o.require(c.action.degree() == 870, "degree 870");
  o.require(ko == 47096, "|K| = 47096");
  o.require(k.holds && k.checked == ko, "K intersecting");
  o.require(Rational(ko, ho) == Rational(58), "|K|/|H| = 58");
  o.require(Rational(58).square_cmp(870) == std::strong_ordering::greater, "58 > sqrt(870)");
  o.info("K order " + n(ko) + ", " + n(k.checked) + " elements each fix a coset; rho >= 58; exact max not computed");
  return o;
}

Outcome c5() {
  Outcome o;
  const auto c = build_asc(2);
  const auto s = sub(c, "S");
  const auto r = exact_max(c.action);
  o.require(s.order() == 12 && is_intersecting_subgroup(s), "parabolic S of order 12 intersecting");
  o.require(c.action.degree() == 10 && r.group_order == 60, "degree 10 on 60 vertices");
  o.require(*r.rho >= Rational(2), "rho >= q/2 = 2");
  const std::string match = *r.rho == Rational(2) ? "q/2" : *r.rho == Rational(4) ? "q" : "neither";
  o.info("measured rho " + r.rho->str() + " (max " + n(*r.max_intersecting) + "); bound q/2 = 2, stated q = 4; matches " +
         match);
  return o;
}

Outcome c6() {
  Outcome o;
  const auto lift = wreath_product(symmetric_natural(3).action, 2, {{parse_cycles("(0 1)", 3)}});
  const PermGroup s(Permutation(9), lift.lifted.at(0));
  o.require(s.order() == 8, "|S wr Z2| = 8");
  o.require(every_element_fixes_a_point(s), "every element fixes a point");
  o.info(n(s.order()) + " elements on " + n(lift.action.degree()) + " points, all fix a point");
  return o;
}

Outcome c7() {
  Outcome o;
  const auto c = build_sl23();
  const auto q8 = sub(c, "Q8").elements().elements();
  o.require(q8.size() == 8 && oracle::sharply_transitive(q8, 8), "Q8 regular");
  const auto found = find_sharply_transitive(c.action);
  o.require(found.found && oracle::sharply_transitive(found.elements, 8), "regular subgroup found (EKR certificate)");
  const auto r = exact_max(c.action);
  o.require(*r.max_intersecting == 3, "max 3");
  const auto m = enumerate_maximum_intersecting_sets(c.action, 1000);
  std::size_t non_coset = 0;
  for (const auto& t : m.through_identity) non_coset += !t.is_coset;
  o.info(n(m.through_identity.size()) + " maximum sets through 1 (exhausted), " + n(non_coset) + " non-coset");
  o.require(non_coset > 0, "a non-coset maximum witness exists");
  o.info("printed {1, ah, a^-1 h^-1} intersecting: " +
         std::string(is_intersecting_set(c.subgroup("W").elements).ok ? "yes" : "no"));
  return o;
}

Outcome c8() {
  Outcome o;
  const auto a = agl1_natural(5, 1).action;
  const auto g = a.elements().elements();
  std::size_t subsets = 0, agree = 0;
  std::vector<Permutation> s;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!s.empty()) {
      ++subsets;
      agree += frobenius_decompose(a, s).success == is_intersecting_set(s).ok;
    }
    if (s.size() == 4) return;
    for (std::size_t i = from; i < g.size(); ++i) {
      s.push_back(g[i]);
      self(self, i + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  o.require(subsets == 6195 && agree == subsets, "decomposition <=> intersecting on all subsets of size <= 4");
  o.info("(i) " + n(agree) + "/" + n(subsets) + " subsets agree");
  for (const auto& [c, holds] : {std::pair{symmetric_natural(3), true}, std::pair{dihedral_natural(5), true},
                                 std::pair{agl1_natural(5, 1), false}}) {
    auto r = exact_max(c.action);
    strict_ekr_check(c.action, r);
    g_reports.back() = r;
    o.require((r.strict_ekr == Verdict::Holds) == holds && r.strict_ekr != Verdict::NotComputed,
              c.name + " strict-EKR " + (holds ? "holds" : "fails"));
    o.info("(ii) " + c.name + " |H|=" + n(r.stabilizer_order) + " strict " + to_string(r.strict_ekr));
  }
  return o;
}

Outcome c9() {
  Outcome o;
  const auto c = build_pglexam(5);
  const auto& ct = c.subgroup("C").elements;
  o.require(ct.size() == 10 && oracle::sharply_transitive(ct, 10), "C~ sharply transitive on 10 points");
  const auto r = exact_max(c.action);
  o.require(*r.max_intersecting == 12 && r.stabilizer_order == 12, "EKR certificate matches clique search (12)");
  const auto full7 = build_pglexam(7);
  const auto* branch = full7.metric("psl_branch");
  o.require(branch && branch->value == "active", "q=7 PSL branch active");
  const auto p7 = build_pglexam(7, true);
  o.require(oracle::sharply_transitive(p7.subgroup("C").elements, p7.action.degree()), "q=7 transversal validates");
  o.info("q=5: C~ valid, max " + n(*r.max_intersecting) + "; q=7: branch active, transversal of " +
         n(p7.subgroup("C").elements.size()) + " on " + n(p7.action.degree()) + " points valid");
  return o;
}

Outcome c10() {
  Outcome o;
  std::vector<std::pair<std::string, Action>> cases;
  const auto s8 = symmetric_natural(8).action;
  const auto p2 = sylow_subgroup(s8, 2);
  cases.emplace_back("Sylow-2 of Sym(8)", Action(8, p2.generators()));
  const auto s9 = symmetric_natural(9).action;
  const auto p3 = sylow_subgroup(s9, 3);
  cases.emplace_back("Sylow-3 of Sym(9)", Action(9, p3.generators()));
  cases.emplace_back("Z4xZ2", z4xz2_regular().action);
  cases.emplace_back("Z2 wr Z2 wr Z2 wr Z2", sylow_wreath(2, 4).action);
  o.require(p2.order() == 128 && p3.order() == 81, "Sylow orders 128 and 81");
  for (const auto& [name, a] : cases) {
    const auto s = p_group_sharply_transitive(a);
    const bool valid = oracle::sharply_transitive(s, a.degree());
    bool members = true;
    for (const auto& x : s) members = members && a.group().contains(x);
    o.require(valid && members, name + " set valid");
    o.info(name + " (degree " + n(a.degree()) + ", order " + n(a.order()) + ") " + (valid ? "valid" : "invalid"));
  }
  return o;
}

Outcome c11() {
  Outcome o;
  for (const auto& c : {symmetric_natural(4), agl1_natural(2, 3), agl1_natural(3, 2), psl2_natural(7, 1),
                        psl2_natural(2, 3)}) {
    const auto cert = prime_power_ekr(c.action);
    g_reports.push_back(cert);
    const auto r = exact_max(c.action);
    o.require(cert.ekr == Verdict::Holds && cert.sharply && oracle::sharply_transitive(cert.sharply->elements,
                                                                                         c.action.degree()),
              c.name + " certified");
    o.require(*r.max_intersecting == r.stabilizer_order, c.name + " max = |G_w|");
    o.info(c.name + "/" + n(c.action.degree()) + " max " + n(*r.max_intersecting) + " = |G_w|");
  }
  return o;
}

Outcome c12() {
  Outcome o;
  std::size_t compared = 0;
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    for (auto fam : {Psl2Family::Borel, Psl2Family::DMinus, Psl2Family::DPlus, Psl2Family::A4, Psl2Family::S4,
                     Psl2Family::A5}) {
      if (!psl2_family_admissible(p, fam)) continue;
      const auto v = psl2_analyze(p, fam);
      const auto ex = oracle::psl2_exhaustive(build_psl2(p, fam).action);
      const std::string tag = "p=" + n(p) + " " + to_string(fam);
      o.require(ex.max_order == v.max_intersecting_subgroup, tag + " max order");
      o.require(ex.weak == v.weak_ekr, tag + " weak");
      o.require(ex.strict_weak == v.strict_weak_ekr, tag + " strict-weak");
      o.require(ex.strict_weak_iso == v.strict_weak_ekr_isomorphism, tag + " strict-weak up to isomorphism");
      ++compared;
    }
  }
  o.info(n(compared) + " (p, family) pairs agree with exhaustive search");
  const auto a13 = psl2_analyze(13, Psl2Family::DMinus);
  const bool a4 = std::count(a13.maximum_types.begin(), a13.maximum_types.end(), "A4") == 1;
  o.require(a4 && a13.max_intersecting_subgroup == 12 && a13.weak_ekr && !a13.strict_weak_ekr,
            "PSL(2,13)/D12: A4 maximum, weak holds, strict-weak fails");
  const auto a11 = psl2_analyze(11, Psl2Family::DPlus);
  const bool a4_11 = std::any_of(a11.intersecting.begin(), a11.intersecting.end(),
                                 [](const auto& t) { return t.name == "A4" && t.order == 12; });
  o.require(a4_11 && a11.stabilizer == "D12", "PSL(2,11)/D12: A4 of order 12 intersecting");
  std::size_t table = 0;
  for (std::uint32_t p : {23u, 29u, 31u, 59u, 61u}) {
    for (auto fam : {Psl2Family::Borel, Psl2Family::DMinus, Psl2Family::DPlus, Psl2Family::A4, Psl2Family::S4,
                     Psl2Family::A5}) {
      if (!psl2_family_admissible(p, fam)) continue;
      const auto v = psl2_analyze(p, fam);
      o.require(v.weak_ekr == v.table_weak_ekr && v.strict_weak_ekr_isomorphism == v.table_strict_weak_ekr,
                "p=" + n(p) + " " + to_string(fam) + " matches case table");
      ++table;
    }
  }
  o.info(n(table) + " exceptional-prime pairs match the case table");
  return o;
}

Outcome c13() {
  Outcome o;
  std::size_t ok = 0;
  for (const auto& r : g_reports) {
    const bool good = r.rho && r.rho_at_least_one() && r.rho_within_third() &&
                      (r.degree <= 3 || *r.rho <= Rational(r.degree, 3)) && *r.rho >= Rational(1);
    ok += good;
    if (!good) o.require(false, "degree " + n(r.degree) + " rho " + (r.rho ? r.rho->str() : "missing"));
  }
  o.require(!g_reports.empty(), "reports collected");
  o.info(n(ok) + "/" + n(g_reports.size()) + " reports satisfy 1 <= rho <= |Omega|/3");
  return o;
}

Outcome c14() {
  Outcome o;
  const auto c = build_agl_example(3, 2);
  const auto h = sub(c, "H"), s = sub(c, "S");
  o.require(h.order() == 6, "|H| = 6");
  o.require(c.action.degree() == 72, "degree 72");
  o.require(s.order() == 18 && is_intersecting_subgroup(s), "S of order 18 intersecting");
  o.require(Rational(s.order(), h.order()) >= Rational(3), "rho >= 3");
  o.info("|H| " + n(h.order()) + ", degree " + n(c.action.degree()) + ", |S| " + n(s.order()) + ", rho >= " +
         Rational(s.order(), h.order()).str());
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--known-failure N]...\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "nobo q=4,5: max = |S|, rho = q < sqrt(q(q+1))", 60, c1},
      {2, "table1 row 1: max 200, rho = 10 = |Omega|/3", 60, c2},
      {3, "table1 row 5: max 108, rho = 6 = |Omega|/3", 30, c3},
      {4, "table1 row 3: K intersecting, rho >= 58", 180, c4},
      {5, "asc q=4: S intersecting, exact rho >= 2", 10, c5},
      {6, "wreath lift of Sym(3): S wr Z2 intersecting", 1, c6},
      {7, "SL(2,3) on 8 points: Q8 regular, max 3, non-coset witness", 5, c7},
      {8, "Frobenius: decomposition <=> intersecting; strict-EKR iff |H| = 2", 60, c8},
      {9, "PGL(2,5) transversal; q=7 PSL branch", 30, c9},
      {10, "p-group sharply transitive sets", 30, c10},
      {11, "prime-power degree: EKR certified, max = |G_w|", 180, c11},
      {12, "PSL(2,p) analyzer vs exhaustive search and case table", 120, c12},
      {13, "every report: 1 <= rho <= |Omega|/3", 1, c13},
      {14, "AGL example p=3, d=2: S intersecting, rho >= 3", 30, c14},
  };
  std::set<int> failed;
  double total = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    if (secs > c.limit_s) o.require(false, "time limit " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    if (!o.pass) failed.insert(c.id);
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit_s);
    std::cout << "criterion " << (c.id < 10 ? " " : "") << c.id << "  " << (o.pass ? "PASS" : "FAIL") << "  ["
              << timing << "]  " << c.title << "\n      " << o.detail << "\n";
  }
  std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass";
  if (!failed.empty()) {
    std::cout << "; failing:";
    for (int f : failed) std::cout << " " << f << (known.count(f) ? " (known)" : "");
  }
  std::printf("; total %.1fs\n", total);
  if (failed != known) {
    for (int k : known)
      if (!failed.count(k)) std::cout << "criterion " << k << " was listed as a known failure but passed\n";
    return 1;
  }
  return 0;
}
