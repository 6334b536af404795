#include "ekr/manifest.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

namespace ekr {

using nlohmann::json;

namespace {

struct Ctx {
  AnalysisConfig cfg;
  std::vector<EkrReport>* reports;

  EkrReport max(const ConstructionResult& c, bool seeded = true) {
    std::vector<std::vector<Permutation>> seeds;
    if (seeded)
      for (const auto& s : c.subgroups)
        if (!s.is_set) seeds.push_back(PermGroup(Permutation(c.action.degree()), s.generators).elements().elements());
    auto r = max_intersecting(c.action, cfg, seeds);
    reports->push_back(r);
    return r;
  }
};

using Body = std::function<void(Ctx&, ClaimResult&)>;

struct Entry {
  const char* id;
  const char* claim;
  Body run;
};

std::string n(std::uint64_t x) { return std::to_string(x); }
std::string yn(bool b) { return b ? "yes" : "no"; }

PermGroup sub(const ConstructionResult& c, const std::string& role) {
  return PermGroup(Permutation(c.action.degree()), c.subgroup(role).generators);
}

void nobo_claim(Ctx& ctx, ClaimResult& r, std::uint32_t p, std::uint32_t d) {
  const auto c = build_nobo(p, d, ctx.cfg.enumeration_cap);
  std::uint64_t qq = 1;
  for (std::uint32_t i = 0; i < d; ++i) qq *= p;
  const auto s = sub(c, "S");
  const bool s_int = is_intersecting_subgroup(s, ctx.cfg.enumeration_cap);
  const auto rep = ctx.max(c);
  const std::uint64_t s_order = s.order();
  r.expected = "degree " + n(qq * (qq + 1)) + ", S intersecting, max = |S| = " + n(qq * qq * (qq - 1)) + ", rho = " +
               n(qq) + " < sqrt(degree)";
  r.computed = "degree " + n(c.action.degree()) + ", S intersecting " + yn(s_int) + ", max " +
               n(*rep.max_intersecting) + " (|S| = " + n(s_order) + ", |G| = " + n(rep.group_order) + "), rho " +
               rep.rho->str();
  r.pass = c.action.degree() == qq * (qq + 1) && s_int && s_order == qq * qq * (qq - 1) &&
           *rep.max_intersecting == s_order && *rep.rho == Rational(qq) &&
           rep.rho->square_cmp(c.action.degree()) == std::strong_ordering::less;
}

void psl2_example(ClaimResult& r, std::uint32_t p, Psl2Family fam) {
  const auto v = psl2_analyze(p, fam);
  const bool a4 = std::find(v.maximum_types.begin(), v.maximum_types.end(), "A4") != v.maximum_types.end();
  r.expected = "stabiliser " + v.stabilizer + " of order 12; A4 intersecting of order 12; weak-EKR holds, strict-weak fails";
  std::string types;
  for (const auto& t : v.maximum_types) types += (types.empty() ? "" : " ") + t;
  r.computed = "stabiliser " + v.stabilizer + ", maximum intersecting subgroups of order " +
               n(v.max_intersecting_subgroup) + ": " + types + "; weak " + yn(v.weak_ekr) + ", strict-weak " +
               yn(v.strict_weak_ekr);
  r.pass = v.stabilizer_order == 12 && a4 && v.max_intersecting_subgroup == 12 && v.weak_ekr && !v.strict_weak_ekr;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"nobo-q4", "nobo action q=4: S = F:E^x is a maximum intersecting set",
       [](Ctx& ctx, ClaimResult& r) { nobo_claim(ctx, r, 2, 2); }},
      {"nobo-q5", "nobo action q=5: S = F:E^x is a maximum intersecting set",
       [](Ctx& ctx, ClaimResult& r) {
         nobo_claim(ctx, r, 5, 1);
         r.note = "a quoted exact maximum of 200 disagrees with |S| = q^2(q-1) = 100; max = |S| is checked";
       }},
      {"table1-row1", "F5^2:SL(2,3), rho = |K|/|H| = |Omega|/3",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_table1(1, ctx.cfg.enumeration_cap);
         const auto ko = sub(c, "K").order(), ho = sub(c, "H").order();
         const auto rep = ctx.max(c);
         r.expected = "degree 30, |K|/|H| = 10, max 200, rho 10 = 30/3";
         r.computed = "degree " + n(c.action.degree()) + ", |K|/|H| = " + Rational(ko, ho).str() + ", max " +
                      n(*rep.max_intersecting) + ", rho " + rep.rho->str();
         r.pass = c.action.degree() == 30 && ko == 10 * ho && *rep.max_intersecting == 200 &&
                  *rep.rho == Rational(10) && *rep.rho == Rational(c.action.degree(), 3);
       }},
      {"table1-row5", "F3^3:A4, rho = |K|/|H| = 6",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_table1(5, ctx.cfg.enumeration_cap);
         const auto rep = ctx.max(c);
         r.expected = "degree 18, max 108, rho 6 = 18/3 > sqrt(18)";
         r.computed = "degree " + n(c.action.degree()) + ", max " + n(*rep.max_intersecting) + ", rho " + rep.rho->str();
         r.pass = c.action.degree() == 18 && *rep.max_intersecting == 108 && *rep.rho == Rational(6) &&
                  rep.rho->square_cmp(18) == std::strong_ordering::greater;
       }},
      {"table1-row3", "F29^2 row: K is an intersecting subgroup, rho >= 58",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_table1(3, ctx.cfg.enumeration_cap);
         const auto k = intersecting_subgroup_check(c, "K", ctx.cfg.enumeration_cap);
         const auto ho = c.subgroup("H").order, ko = c.subgroup("K").order;
         const Rational lb(ko, ho);
         r.expected = "degree 870, K (order 47096) intersecting, rho >= 58 > sqrt(870)";
         r.computed = "degree " + n(c.action.degree()) + ", K order " + n(ko) + " intersecting " + yn(k.holds) +
                      " (" + n(k.checked) + " elements checked), |K|/|H| = " + lb.str();
         r.pass = c.action.degree() == 870 && ko == 47096 && k.holds && k.checked == ko && lb == Rational(58) &&
                  lb.square_cmp(870) == std::strong_ordering::greater;
         r.note = "exact maximum not computed (group order " + n(*c.group_order) + ")";
       }},
      {"asc-q4-exact-rho", "PGL(2,4) on pairs: parabolic S intersecting; exact rho",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_asc(2);
         const auto s = sub(c, "S");
         const bool s_int = is_intersecting_subgroup(s);
         const auto rep = ctx.max(c, false);
         const auto& rho = *rep.rho;
         const bool half = rho == Rational(2), full = rho == Rational(4);
         r.expected = "rho >= q/2 = 2; statements: rho >= q/2 = 2 and rho = q = 4";
         r.computed = "degree " + n(c.action.degree()) + ", |S| = " + n(s.order()) + " intersecting " + yn(s_int) +
                      ", |G| = " + n(rep.group_order) + ", exact max " + n(*rep.max_intersecting) + ", rho " + rho.str();
         r.pass = c.action.degree() == 10 && s.order() == 12 && s_int && rho >= Rational(2);
         r.note = std::string("measured rho matches ") +
                  (half ? "q/2 = 2 (sharp bound); rho = q = 4 does not hold"
                        : full ? "q = 4; the q/2 bound is not sharp" : "neither statement exactly");
       }},
      {"wreath-lift-sym3", "Sym(3) wr Z2 on 9 points: S wr Z2 is intersecting",
       [](Ctx&, ClaimResult& r) {
         const auto base = symmetric_natural(3).action;
         const auto lift = wreath_product(base, 2, {{parse_cycles("(0 1)", 3)}});
         const PermGroup s(Permutation(9), lift.lifted.at(0));
         std::size_t fixing = 0;
         for (const auto& x : s.elements()) fixing += x.has_fixed_point();
         r.expected = "8 elements, all fix a point of the 9-point action";
         r.computed = n(s.order()) + " elements, " + n(fixing) + " fix a point";
         r.pass = lift.action.degree() == 9 && s.order() == 8 && fixing == 8;
       }},
      {"sl23-ekr", "SL(2,3) on 8 points: Q8 regular, EKR, max 3",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_sl23();
         const auto q8 = sub(c, "Q8");
         const auto q8e = q8.elements().elements();
         const bool regular = is_sharply_transitive(q8e, 8);
         const auto found = find_sharply_transitive(c.action, ctx.cfg);
         const auto rep = ctx.max(c);
         r.expected = "Q8 regular, max 3 = |G_w|, rho 1";
         r.computed = "Q8 regular " + yn(regular) + ", search found a sharply transitive " +
                      (found.is_subgroup ? "subgroup" : "set") + " " + yn(found.found) + ", max " +
                      n(*rep.max_intersecting) + ", rho " + rep.rho->str();
         r.pass = regular && found.found && *rep.max_intersecting == 3 && *rep.rho == Rational(1);
       }},
      {"sl23-non-coset-witness", "SL(2,3) on 8 points: a maximum intersecting set that is not a coset",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_sl23();
         const auto m = enumerate_maximum_intersecting_sets(c.action, ctx.cfg.enum_limit, ctx.cfg);
         std::size_t cosets = 0;
         for (const auto& t : m.through_identity) cosets += t.is_stabilizer_coset;
         const auto& w = c.subgroup("W").elements;
         r.expected = "a non-coset maximum intersecting set, e.g. {1, ah, a^-1 h^-1}";
         r.computed = n(m.through_identity.size()) + " maximum sets through 1 (exhausted " + yn(m.exhausted) + "), " +
                      n(cosets) + " are point-stabiliser cosets; {1, ah, a^-1 h^-1} intersecting " +
                      yn(is_intersecting_set(w).ok);
         r.pass = std::any_of(m.through_identity.begin(), m.through_identity.end(),
                              [](const auto& t) { return !t.is_coset; });
         r.note = "a^2 = -1 makes the ratio a h^2 a = -(a h^2 a^-1) of order 6, a derangement; strict-EKR holds";
       }},
      {"frobenius-agl15", "AGL(1,5): Frobenius decomposition succeeds iff the set is intersecting",
       [](Ctx& ctx, ClaimResult& r) {
         const auto a = agl1_natural(5, 1).action;
         const auto g = a.elements().elements();
         std::size_t subsets = 0, agree = 0;
         std::vector<Permutation> s;
         auto rec = [&](auto&& self, std::size_t from) -> void {
           if (!s.empty()) {
             ++subsets;
             agree += frobenius_decompose(a, s, ctx.cfg.enumeration_cap).success == is_intersecting_set(s).ok;
           }
           if (s.size() == 4) return;
           for (std::size_t i = from; i < g.size(); ++i) {
             s.push_back(g[i]);
             self(self, i + 1);
             s.pop_back();
           }
         };
         rec(rec, 0);
         r.expected = "agreement on all 6195 nonempty subsets of size <= 4";
         r.computed = "agreement on " + n(agree) + " of " + n(subsets);
         r.pass = subsets == 6195 && agree == subsets;
       }},
      {"frobenius-strict-ekr", "Frobenius groups: strict-EKR iff |H| = 2",
       [](Ctx& ctx, ClaimResult& r) {
         std::string out;
         bool ok = true;
         const std::vector<std::pair<ConstructionResult, bool>> cases{
             {symmetric_natural(3), true}, {dihedral_natural(5), true}, {agl1_natural(5, 1), false}};
         for (const auto& [c, want] : cases) {
           auto rep = ctx.max(c, false);
           strict_ekr_check(c.action, rep, ctx.cfg);
           ctx.reports->back() = rep;
           const bool holds = rep.strict_ekr == Verdict::Holds;
           ok = ok && rep.strict_ekr != Verdict::NotComputed && holds == want;
           out += (out.empty() ? "" : ", ") + c.name + " (|H| = " + n(rep.stabilizer_order) + ") " +
                  to_string(rep.strict_ekr);
         }
         r.expected = "symmetric n=3 holds, dihedral n=5 holds, agl1 p=5 fails";
         r.computed = out;
         r.pass = ok;
       }},
      {"pglexam-q5", "PGL(2,5) on 10 points: C~ is a transversal; EKR",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_pglexam(5);
         const bool sharp = is_sharply_transitive(c.subgroup("C").elements, 10);
         const auto rep = ctx.max(c);
         r.expected = "C~ sharply transitive (10 elements), max 12 = |D12|";
         r.computed = "C~ of " + n(c.subgroup("C").elements.size()) + " elements sharply transitive " + yn(sharp) +
                      ", max " + n(*rep.max_intersecting) + ", |G_w| " + n(rep.stabilizer_order);
         r.pass = sharp && c.subgroup("C").elements.size() == 10 && *rep.max_intersecting == 12 &&
                  rep.stabilizer_order == 12;
       }},
      {"pglexam-q7-psl", "q=7: the PSL(2,7) branch and its transversal",
       [](Ctx& ctx, ClaimResult& r) {
         const auto full = build_pglexam(7);
         const auto* branch = full.metric("psl_branch");
         const auto c = build_pglexam(7, true);
         const bool sharp = is_sharply_transitive(c.subgroup("C").elements, c.action.degree());
         const auto rep = ctx.max(c);
         r.expected = "branch active; transversal sharply transitive on 21 points; max 8 = |G_w|";
         r.computed = std::string("branch ") + (branch ? branch->value : "missing") + "; transversal sharply transitive " +
                      yn(sharp) + " on " + n(c.action.degree()) + " points; max " + n(*rep.max_intersecting);
         r.pass = branch && branch->value == "active" && sharp && c.action.degree() == 21 &&
                  *rep.max_intersecting == 8 && rep.stabilizer_order == 8;
       }},
      {"p-group-sharply", "p-groups: the constructed sets are sharply transitive",
       [](Ctx& ctx, ClaimResult& r) {
         const std::vector<ConstructionResult> cases{sylow_wreath(2, 3), sylow_wreath(3, 2), z4xz2_regular(),
                                                     sylow_wreath(2, 4)};
         std::string out;
         bool ok = true;
         for (const auto& c : cases) {
           const auto s = p_group_sharply_transitive(c.action, ctx.cfg.enumeration_cap);
           const bool valid = is_sharply_transitive(s, c.action.degree());
           ok = ok && valid;
           out += (out.empty() ? "" : ", ") + c.name + " degree " + n(c.action.degree()) + " order " +
                  n(c.action.order()) + " " + (valid ? "valid" : "INVALID");
         }
         r.expected = "Sylow-2 of Sym(8) (128), Sylow-3 of Sym(9) (81), Z4xZ2, Z2 wr Z2 wr Z2 wr Z2: all valid";
         r.computed = out;
         r.pass = ok && cases[0].action.order() == 128 && cases[1].action.order() == 81 &&
                  cases[3].action.degree() == 16;
       }},
      {"prime-power-ekr", "prime-power degree: EKR certified and max = |G_w|",
       [](Ctx& ctx, ClaimResult& r) {
         const std::vector<ConstructionResult> cases{symmetric_natural(4), agl1_natural(2, 3), agl1_natural(3, 2),
                                                     psl2_natural(7, 1), psl2_natural(2, 3)};
         std::string out;
         bool ok = true;
         for (const auto& c : cases) {
           const auto cert = prime_power_ekr(c.action, ctx.cfg);
           ctx.reports->push_back(cert);
           const auto direct = ctx.max(c, false);
           const bool good = cert.ekr == Verdict::Holds && cert.sharply && cert.sharply->found &&
                             is_sharply_transitive(cert.sharply->elements, c.action.degree()) &&
                             *direct.max_intersecting == direct.stabilizer_order;
           ok = ok && good;
           out += (out.empty() ? "" : ", ") + c.name + "/" + n(c.action.degree()) + " max " +
                  n(*direct.max_intersecting) + "=" + n(direct.stabilizer_order) + (good ? "" : " FAIL");
         }
         r.expected = "Sym(4) 6, AGL(1,8) 7, AGL(1,9) 8, PSL(2,7)/8 21, PSL(2,8)/9 56";
         r.computed = out;
         r.pass = ok;
       }},
      {"psl2-p13-dminus", "PSL(2,13) on cosets of D12: A4 is a maximum intersecting subgroup",
       [](Ctx&, ClaimResult& r) { psl2_example(r, 13, Psl2Family::DMinus); }},
      {"psl2-p11-dplus", "PSL(2,11) on cosets of D12: A4 is intersecting of order 12",
       [](Ctx&, ClaimResult& r) { psl2_example(r, 11, Psl2Family::DPlus); }},
      {"psl2-case-table", "PSL(2,p), exceptional primes: analyzer agrees with the case table",
       [](Ctx&, ClaimResult& r) {
         std::size_t checked = 0, agree = 0;
         std::string bad;
         for (std::uint32_t p : {23u, 29u, 31u, 59u, 61u}) {
           for (auto fam : {Psl2Family::Borel, Psl2Family::DMinus, Psl2Family::DPlus, Psl2Family::A4,
                            Psl2Family::S4, Psl2Family::A5}) {
             if (!psl2_family_admissible(p, fam)) continue;
             const auto v = psl2_analyze(p, fam);
             ++checked;
             if (v.weak_ekr == v.table_weak_ekr && v.strict_weak_ekr_isomorphism == v.table_strict_weak_ekr) {
               ++agree;
             } else {
               bad += " " + n(p) + "/" + to_string(fam);
             }
           }
         }
         r.expected = "weak and strict-weak verdicts match the table for p in {23,29,31,59,61}";
         r.computed = n(agree) + " of " + n(checked) + " (p, family) pairs agree" + (bad.empty() ? "" : ";" + bad);
         r.pass = checked > 0 && agree == checked;
         r.note = "strict-weak compared up to isomorphism";
       }},
      {"agl-example-p3d2", "AGL example p=3, d=2: S = V:<x> intersecting, rho >= 3",
       [](Ctx& ctx, ClaimResult& r) {
         const auto c = build_agl_example(3, 2, ctx.cfg.enumeration_cap);
         const auto h = sub(c, "H"), s = sub(c, "S");
         const bool s_int = is_intersecting_subgroup(s, ctx.cfg.enumeration_cap);
         r.expected = "|H| = 6, degree 72, |S| = 18 intersecting, rho >= 3";
         r.computed = "|H| = " + n(h.order()) + ", degree " + n(c.action.degree()) + ", |S| = " + n(s.order()) +
                      " intersecting " + yn(s_int) + ", |S|/|H| = " + Rational(s.order(), h.order()).str();
         r.pass = h.order() == 6 && c.action.degree() == 72 && s.order() == 18 && s_int;
       }},
      {"rho-bounds", "every report: 1 <= rho <= |Omega|/3",
       [](Ctx& ctx, ClaimResult& r) {
         // a fixed sweep so the claim means something when run alone
         for (const auto& c : {symmetric_natural(3), symmetric_natural(5), dihedral_natural(6), build_sl23(),
                               build_asc(2), agl1_natural(7, 1), build_nobo(3, 1), build_wreath("sym", 3, 2)})
           ctx.max(c, false);
         std::size_t ok = 0;
         std::string bad;
         for (const auto& rep : *ctx.reports) {
           if (rep.rho_at_least_one() && rep.rho_within_third()) {
             ++ok;
           } else {
             bad += " degree " + n(rep.degree) + " rho " + (rep.rho ? rep.rho->str() : "?");
           }
         }
         r.expected = "all reports within bounds";
         r.computed = n(ok) + " of " + n(ctx.reports->size()) + " reports within bounds" + bad;
         r.pass = ok == ctx.reports->size();
       }},
  };
  return entries;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

bool Manifest::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const auto& c) { return c.pass; });
}

std::vector<std::string> Manifest::failed_ids() const {
  std::vector<std::string> out;
  for (const auto& c : claims)
    if (!c.pass) out.push_back(c.id);
  return out;
}

std::vector<std::string> claim_ids() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.id);
  return out;
}

Manifest verify_paper(const std::vector<std::string>& only, const AnalysisConfig& cfg) {
  const auto ids = claim_ids();
  for (const auto& id : only)
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw InvalidArgument("unknown claim id '" + id + "'");
  Manifest m;
  Ctx ctx{cfg, &m.reports};
  for (const auto& e : registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    ClaimResult r;
    r.id = e.id;
    r.claim = e.claim;
    try {
      e.run(ctx, r);
    } catch (const Error& err) {
      r.pass = false;
      r.computed = std::string("error: ") + err.what();
    }
    m.claims.push_back(std::move(r));
  }
  return m;
}

json to_json(const Manifest& m) {
  json claims = json::array();
  for (const auto& c : m.claims) {
    json j{{"id", c.id}, {"claim", c.claim}, {"expected", c.expected}, {"computed", c.computed},
           {"status", c.pass ? "pass" : "fail"}};
    if (!c.note.empty()) j["note"] = c.note;
    claims.push_back(j);
  }
  return {{"schema", "ekr/1"}, {"claims", claims}, {"all_passed", m.all_passed()}, {"failed", m.failed_ids()}};
}

std::string render_table(const Manifest& m) {
  std::size_t w = 5;
  for (const auto& c : m.claims) w = std::max(w, c.id.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(w)) << "claim" << "  status  detail\n";
  for (const auto& c : m.claims) {
    out << std::setw(static_cast<int>(w)) << c.id << "  " << (c.pass ? "pass  " : "FAIL  ") << "  " << c.claim << "\n";
    out << std::setw(static_cast<int>(w)) << "" << "          expected: " << c.expected << "\n";
    out << std::setw(static_cast<int>(w)) << "" << "          computed: " << c.computed << "\n";
    if (!c.note.empty()) out << std::setw(static_cast<int>(w)) << "" << "          note: " << c.note << "\n";
  }
  const auto failed = m.failed_ids();
  out << (m.claims.size() - failed.size()) << "/" << m.claims.size() << " claims pass";
  if (!failed.empty()) {
    out << "; failed:";
    for (const auto& f : failed) out << " " << f;
  }
  out << "\n";
  return out.str();
}

std::string render_csv(const Manifest& m) {
  std::ostringstream out;
  out << "schema,id,claim,expected,computed,status,note\n";
  for (const auto& c : m.claims) {
    out << "ekr/1," << csv_field(c.id) << "," << csv_field(c.claim) << "," << csv_field(c.expected) << ","
        << csv_field(c.computed) << "," << (c.pass ? "pass" : "fail") << "," << csv_field(c.note) << "\n";
  }
  return out.str();
}

}  // namespace ekr
