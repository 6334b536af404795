#include <algorithm>
#include <sstream>

#include "ekr/analysis.hpp"

namespace ekr {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}}; }

std::vector<Permutation> subgroup_elements(const ConstructionResult& c, const NamedSubgroup& s, std::size_t cap) {
  if (s.is_set) return s.elements;
  const PermGroup g(Permutation(c.action.degree()), s.generators);
  return g.elements(cap).elements();
}

bool prime_power(std::size_t n) {
  if (n < 2) return false;
  std::size_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

json to_json(const EkrReport& r) {
  json j;
  j["degree"] = r.degree;
  j["group_order"] = r.group_order;
  j["stabilizer_order"] = r.stabilizer_order;
  j["max_intersecting"] = r.max_intersecting ? json(*r.max_intersecting) : json(nullptr);
  j["rho"] = r.rho ? rational_json(*r.rho) : json(nullptr);
  j["verdicts"] = {{"ekr", to_string(r.ekr)}, {"strict_ekr", to_string(r.strict_ekr)},
                   {"weak_ekr", to_string(r.weak_ekr)}};
  j["witness"] = cycle_strings(r.witness);
  if (!r.strict_witness.empty()) j["strict_witness"] = cycle_strings(r.strict_witness);
  j["method"] = r.method;
  j["bound_checks"] = {{"rho_at_least_one", r.rho_at_least_one()},
                       {"rho_within_third", r.rho_within_third()},
                       {"upper_bound", r.upper_bound},
                       {"coclique", r.coclique},
                       {"nodes", r.nodes}};
  if (r.sharply) {
    j["sharply_transitive"] = {{"found", r.sharply->found},
                               {"is_subgroup", r.sharply->is_subgroup},
                               {"elements", cycle_strings(r.sharply->elements)}};
  }
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  return j;
}

json to_json(const Psl2Verdict& v) {
  json types = json::array();
  for (const auto& t : v.intersecting)
    types.push_back({{"type", t.name}, {"order", t.order}, {"element_orders", t.element_orders}, {"classes", t.classes}});
  return {
      {"schema", "ekr/1"},
      {"p", v.p},
      {"family", to_string(v.family)},
      {"stabilizer", v.stabilizer},
      {"stabilizer_order", v.stabilizer_order},
      {"degree", v.degree},
      {"stabilizer_element_orders", v.stabilizer_element_orders},
      {"intersecting_types", types},
      {"max_intersecting_subgroup", v.max_intersecting_subgroup},
      {"maximum_types", v.maximum_types},
      {"weak_ekr", v.weak_ekr},
      {"strict_weak_ekr", v.strict_weak_ekr},
      {"strict_weak_ekr_up_to_isomorphism", v.strict_weak_ekr_isomorphism},
      {"exceptional_prime", v.exceptional_prime},
      {"case_table", {{"weak_ekr", v.table_weak_ekr}, {"strict_weak_ekr", v.table_strict_weak_ekr}}},
      {"ekr", {{"verdict", v.ekr}, {"basis", v.ekr_basis}}},
      {"strict_ekr", {{"verdict", v.strict_ekr}, {"basis", v.strict_ekr_basis}}},
  };
}

json to_json(const MaximumSets& m) {
  json sets = json::array();
  for (const auto& t : m.through_identity)
    sets.push_back({{"elements", cycle_strings(t.elements)},
                    {"is_coset", t.is_coset},
                    {"is_stabilizer_coset", t.is_stabilizer_coset}});
  json j{{"size", m.size}, {"through_identity", sets}, {"exhausted", m.exhausted}};
  j["total"] = m.total ? json(*m.total) : json(nullptr);
  return j;
}

std::vector<std::string> parse_checks(const std::string& csv) {
  static const std::vector<std::string> known{"max", "strict", "sharply", "frobenius", "prime-power", "subgroups"};
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (std::find(known.begin(), known.end(), item) == known.end())
      throw InvalidArgument("unknown check '" + item + "'");
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) out.push_back("max");
  return out;
}

ConstructionResult construction_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("group description must be a JSON object");
  if (j.contains("schema") && j["schema"] != "ekr/1") throw ParseError("unsupported schema " + j["schema"].dump());
  if (!j.contains("degree") || !j["degree"].is_number_unsigned()) throw ParseError("group description needs a degree");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ParseError("group description needs a generators array");
  const auto n = j["degree"].get<std::size_t>();
  if (n == 0 || n > kMaxDegree) throw InvalidArgument("degree out of range");
  auto perms = [&](const json& list) {
    std::vector<Permutation> out;
    for (const auto& s : list) {
      if (!s.is_string()) throw ParseError("permutations are given as cycle strings");
      out.push_back(parse_cycles(s.get<std::string>(), n));
    }
    return out;
  };
  ConstructionResult c;
  c.name = j.value("construction", std::string("input"));
  c.params = j.value("params", json::object());
  c.action = Action(n, perms(j["generators"]));
  if (j.contains("subgroups")) {
    for (const auto& s : j["subgroups"]) {
      NamedSubgroup ns;
      ns.role = s.value("role", std::string("S"));
      ns.label = s.value("label", std::string());
      if (s.contains("elements")) {
        ns.is_set = true;
        ns.elements = perms(s["elements"]);
        ns.order = ns.elements.size();
      } else if (s.contains("generators")) {
        ns.generators = perms(s["generators"]);
        ns.order = s.value("order", std::uint64_t{0});
      } else {
        throw ParseError("subgroup '" + ns.role + "' has neither generators nor elements");
      }
      c.subgroups.push_back(std::move(ns));
    }
  }
  return c;
}

AnalyzeOutcome analyze(const ConstructionResult& c, const std::vector<std::string>& checks, const AnalysisConfig& cfg) {
  AnalyzeOutcome out;
  json& j = out.report;
  j["schema"] = "ekr/1";
  j["construction"] = c.name;
  j["params"] = c.params;
  j["degree"] = c.action.degree();
  const bool enumerable = c.enumerable(cfg.enumeration_cap);
  const auto wants = [&](const char* k) { return std::find(checks.begin(), checks.end(), k) != checks.end(); };
  json status = json::object();
  auto not_computed = [&](const std::string& check, const std::string& why) {
    status[check] = {{"status", "not-computed"}, {"reason", why}};
    out.not_computed = true;
  };

  std::optional<EkrReport> rep;
  if (wants("max") || wants("strict")) {
    if (!enumerable) {
      not_computed("max", "group order exceeds the enumeration cap");
    } else if (c.group_order && *c.group_order > cfg.clique_cap) {
      not_computed("max", "group order " + std::to_string(*c.group_order) + " exceeds the clique cap " +
                              std::to_string(cfg.clique_cap) + "; analyse intersecting subgroups instead");
    } else {
      try {
        std::vector<std::vector<Permutation>> seeds;
        for (const auto& s : c.subgroups) seeds.push_back(subgroup_elements(c, s, cfg.enumeration_cap));
        rep = max_intersecting(c.action, cfg, seeds);
        status["max"] = {{"status", "ok"}};
      } catch (const CapExceeded& e) {
        not_computed("max", e.what());
      }
    }
  }
  if (rep && wants("strict")) {
    try {
      strict_ekr_check(c.action, *rep, cfg);
      status["strict"] = {{"status", rep->strict_ekr == Verdict::NotComputed ? "not-computed" : "ok"}};
      if (rep->strict_ekr == Verdict::NotComputed) out.not_computed = true;
    } catch (const CapExceeded& e) {
      not_computed("strict", e.what());
    }
  } else if (wants("strict")) {
    not_computed("strict", "needs the maximum intersecting size");
  }

  if (wants("subgroups")) {
    json subs = json::array();
    std::optional<std::uint64_t> stab;
    if (c.group_order) stab = *c.group_order / c.action.degree();
    else if (enumerable) stab = c.action.order(cfg.enumeration_cap) / c.action.degree();
    bool weak_fails = false;
    for (const auto& s : c.subgroups) {
      if (s.is_set) continue;
      try {
        const auto r = intersecting_subgroup_check(c, s.role, cfg.enumeration_cap);
        const std::uint64_t order = s.order ? s.order : r.checked;
        subs.push_back({{"role", s.role}, {"order", order}, {"intersecting", r.holds}, {"checked", r.checked},
                        {"counterexample", r.counterexample}});
        const auto so = stab ? *stab : c.stabilizer_order;
        if (r.holds && so && order > so) weak_fails = true;
      } catch (const CapExceeded& e) {
        subs.push_back({{"role", s.role}, {"status", "not-computed"}, {"reason", e.what()}});
        out.not_computed = true;
      }
    }
    j["subgroups"] = subs;
    if (rep) rep->weak_ekr = weak_fails ? Verdict::Fails : Verdict::NotComputed;
    j["weak_ekr"] = weak_fails ? "fails" : "not-computed";
    status["subgroups"] = {{"status", "ok"}};
  }

  if (wants("sharply")) {
    if (!enumerable) {
      not_computed("sharply", "group order exceeds the enumeration cap");
    } else {
      try {
        const auto s = find_sharply_transitive(c.action, cfg);
        json registered = json::array();
        for (const auto& sub : c.subgroups) {
          const auto elems = subgroup_elements(c, sub, cfg.enumeration_cap);
          if (elems.size() == c.action.degree())
            registered.push_back({{"role", sub.role}, {"sharply_transitive", is_sharply_transitive(elems, c.action.degree())}});
        }
        j["sharply_transitive"] = {{"found", s.found},
                                   {"exhausted", s.exhausted},
                                   {"is_subgroup", s.is_subgroup},
                                   {"nodes", s.nodes},
                                   {"elements", cycle_strings(s.elements)},
                                   {"registered", registered}};
        if (s.found) {
          j["sharply_transitive"]["certifies"] = "EKR";
          status["sharply"] = {{"status", "ok"}};
        } else if (s.exhausted) {
          status["sharply"] = {{"status", "ok"}};
        } else {
          not_computed("sharply", "node budget exhausted");
        }
      } catch (const CapExceeded& e) {
        not_computed("sharply", e.what());
      }
    }
  }

  if (wants("frobenius")) {
    if (!enumerable) {
      not_computed("frobenius", "group order exceeds the enumeration cap");
    } else {
      const auto info = is_frobenius(c.action, cfg.enumeration_cap);
      json f{{"frobenius", info.frobenius}};
      if (info.frobenius) {
        f["kernel_order"] = info.kernel.size();
        if (rep) {
          const auto d = frobenius_decompose(c.action, rep->witness, cfg.enumeration_cap);
          f["witness_decomposes"] = d.success;
          f["cells"] = d.cells.size();
        }
      }
      j["frobenius"] = f;
      status["frobenius"] = {{"status", "ok"}};
    }
  }

  if (wants("prime-power")) {
    if (!prime_power(c.action.degree())) {
      status["prime-power"] = {{"status", "not-applicable"}, {"reason", "degree is not a prime power"}};
    } else if (!enumerable) {
      not_computed("prime-power", "group order exceeds the enumeration cap");
    } else {
      const auto pp = prime_power_ekr(c.action, cfg);
      j["prime_power"] = to_json(pp);
      if (!rep) rep = pp;
      status["prime-power"] = {{"status", "ok"}};
    }
  }

  if (rep) {
    const auto rj = to_json(*rep);
    for (const auto& [k, v] : rj.items()) j[k] = v;
  } else if (c.group_order) {
    j["group_order"] = *c.group_order;
  } else if (enumerable) {
    j["group_order"] = c.action.order(cfg.enumeration_cap);
  }
  j["checks"] = status;
  return out;
}

}  // namespace ekr
