// ekr: construct group actions, analyse them, replay the claim manifest.
// Talks to the library only through the C interface.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ekr/ekr.h"
#include "json.hpp"

using nlohmann::json;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;
constexpr int kNotComputed = 4;
constexpr int kInternal = 5;

int exit_code(ekr_status s) {
  switch (s) {
    case EKR_OK: return kOk;
    case EKR_ERR_INVALID:
    case EKR_ERR_PARSE: return kUsage;
    case EKR_ERR_CAP: return kCap;
    case EKR_NOT_COMPUTED: return kNotComputed;
    default: return kInternal;
  }
}

int report_error(ekr_status s) {
  if (*ekr_last_error()) std::cerr << "ekr: " << ekr_last_error() << "\n";
  return exit_code(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { ekr_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

struct Options {
  std::uint64_t cap = 2'000'000;
  std::uint64_t clique_cap = 2500;
  std::uint64_t enum_limit = 1000;
  std::optional<std::uint32_t> workers;
  std::string format = "json";
  std::string only;

  // construction parameters, passed through when given
  std::string name;
  std::string input;
  std::string params;
  std::optional<std::uint32_t> p, d, row, f, q, n, k, l;
  std::string family, base;
  bool psl = false;
  std::string checks = "max";
};

json params_of(const Options& o) {
  json j = o.params.empty() ? json::object() : json::parse(o.params);
  auto put = [&](const char* key, const std::optional<std::uint32_t>& v) {
    if (v) j[key] = *v;
  };
  put("p", o.p);
  put("d", o.d);
  put("row", o.row);
  put("f", o.f);
  put("q", o.q);
  put("n", o.n);
  put("k", o.k);
  put("l", o.l);
  if (!o.family.empty()) j["family"] = o.family;
  if (!o.base.empty()) j["base"] = o.base;
  if (o.psl) j["psl"] = true;
  return j;
}

ekr_status make_config(const Options& o, ekr_config** cfg) {
  ekr_status s = ekr_config_new(cfg);
  if (s == EKR_OK) s = ekr_config_set_enumeration_cap(*cfg, o.cap);
  if (s == EKR_OK) s = ekr_config_set_clique_cap(*cfg, o.clique_cap);
  if (s == EKR_OK) s = ekr_config_set_enum_limit(*cfg, o.enum_limit);
  std::uint32_t workers = 1;
  if (o.workers) {
    workers = *o.workers;
  } else if (const char* env = std::getenv("EKR_WORKERS"); env && *env) {
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 1024) {
      std::cerr << "ekr: EKR_WORKERS must be a positive integer\n";
      return EKR_ERR_INVALID;
    }
    workers = static_cast<std::uint32_t>(v);
  }
  if (s == EKR_OK) s = ekr_config_set_workers(*cfg, workers);
  return s;
}

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    const auto num = v["num"].get<std::uint64_t>(), den = v["den"].get<std::uint64_t>();
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  return v.dump();
}

// flat metric rows for csv and table output; structured parts stay JSON-only
std::vector<std::pair<std::string, std::string>> flat_rows(const json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const char* key : {"construction", "degree", "group_order", "stabilizer_order", "max_intersecting", "rho",
                          "method"}) {
    if (j.contains(key)) rows.emplace_back(key, scalar(j[key]));
  }
  if (j.contains("verdicts"))
    for (const auto& [k, v] : j["verdicts"].items()) rows.emplace_back(k, scalar(v));
  if (j.contains("bound_checks"))
    for (const auto& [k, v] : j["bound_checks"].items()) rows.emplace_back(k, scalar(v));
  if (j.contains("metrics"))
    for (const auto& m : j["metrics"]) rows.emplace_back(m["name"].get<std::string>(), scalar(m["expected"]));
  if (j.contains("subgroups"))
    for (const auto& s : j["subgroups"]) {
      const auto role = s.value("role", std::string("?"));
      if (s.contains("order")) rows.emplace_back("order(" + role + ")", scalar(s["order"]));
      if (s.contains("intersecting")) rows.emplace_back("intersecting(" + role + ")", scalar(s["intersecting"]));
    }
  if (j.contains("checks"))
    for (const auto& [k, v] : j["checks"].items()) rows.emplace_back("check(" + k + ")", scalar(v["status"]));
  return rows;
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

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  const auto rows = flat_rows(j);
  if (format == "csv") {
    std::cout << "schema,key,value\n";
    for (const auto& [k, v] : rows) std::cout << "ekr/1," << csv_field(k) << "," << csv_field(v) << "\n";
    return;
  }
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) std::cout << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
}

int cmd_construct(const Options& o) {
  Handle<ekr_config, ekr_config_free> cfg;
  if (auto s = make_config(o, &cfg.p); s != EKR_OK) return report_error(s);
  Handle<ekr_construction, ekr_construction_free> c;
  if (auto s = ekr_construct(o.name.c_str(), params_of(o).dump().c_str(), cfg.p, &c.p); s != EKR_OK)
    return report_error(s);
  CString text;
  if (auto s = ekr_construction_json(c.p, &text.p); s != EKR_OK) return report_error(s);
  emit(json::parse(text.str()), o.format);
  return kOk;
}

int cmd_analyze(const Options& o) {
  Handle<ekr_config, ekr_config_free> cfg;
  if (auto s = make_config(o, &cfg.p); s != EKR_OK) return report_error(s);
  Handle<ekr_construction, ekr_construction_free> c;
  if (!o.input.empty()) {
    std::string text;
    if (o.input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(o.input);
      if (!in) {
        std::cerr << "ekr: cannot read " << o.input << "\n";
        return kUsage;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    if (auto s = ekr_construction_parse(text.c_str(), &c.p); s != EKR_OK) return report_error(s);
  } else if (!o.name.empty()) {
    if (auto s = ekr_construct(o.name.c_str(), params_of(o).dump().c_str(), cfg.p, &c.p); s != EKR_OK)
      return report_error(s);
  } else {
    std::cerr << "ekr: analyze needs a construction name or --input\n";
    return kUsage;
  }
  Handle<ekr_report, ekr_report_free> r;
  const auto status = ekr_analyze(c.p, o.checks.c_str(), cfg.p, &r.p);
  if (status != EKR_OK && status != EKR_NOT_COMPUTED) return report_error(status);
  const std::string why = ekr_last_error();
  CString text;
  if (auto s = ekr_report_json(r.p, &text.p); s != EKR_OK) return report_error(s);
  emit(json::parse(text.str()), o.format);
  if (status == EKR_NOT_COMPUTED) {
    std::cerr << "ekr: " << why << "\n";
    return kNotComputed;
  }
  return kOk;
}

int cmd_psl2(const Options& o) {
  if (!o.p || o.family.empty()) {
    std::cerr << "ekr: psl2-analyze needs --p and --family\n";
    return kUsage;
  }
  CString text;
  if (auto s = ekr_psl2_analyze(*o.p, o.family.c_str(), &text.p); s != EKR_OK) return report_error(s);
  const auto j = json::parse(text.str());
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  for (const char* key : {"p", "family", "stabilizer", "stabilizer_order", "degree", "max_intersecting_subgroup",
                          "weak_ekr", "strict_weak_ekr", "strict_weak_ekr_up_to_isomorphism", "exceptional_prime"})
    rows.emplace_back(key, scalar(j[key]));
  rows.emplace_back("ekr", scalar(j["ekr"]["verdict"]));
  rows.emplace_back("strict_ekr", scalar(j["strict_ekr"]["verdict"]));
  if (o.format == "csv") {
    std::cout << "schema,key,value\n";
    for (const auto& [k, v] : rows) std::cout << "ekr/1," << k << "," << csv_field(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) std::cout << std::left << std::setw(34) << k << "  " << v << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  Handle<ekr_config, ekr_config_free> cfg;
  if (auto s = make_config(o, &cfg.p); s != EKR_OK) return report_error(s);
  Handle<ekr_manifest, ekr_manifest_free> m;
  if (auto s = ekr_verify_paper(o.only.c_str(), cfg.p, &m.p); s != EKR_OK) return report_error(s);
  CString text;
  if (auto s = ekr_manifest_render(m.p, o.format.c_str(), &text.p); s != EKR_OK) return report_error(s);
  std::cout << text.str();
  if (ekr_manifest_all_passed(m.p)) return kOk;
  CString json_text;
  if (ekr_manifest_render(m.p, "json", &json_text.p) == EKR_OK) {
    const auto j = json::parse(json_text.str());
    std::cerr << "ekr: failed claims:";
    for (const auto& id : j["failed"]) std::cerr << " " << id.get<std::string>();
    std::cerr << "\n";
  }
  return kMismatch;
}

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--params", o.params, "construction parameters as a JSON object");
  sub->add_option("--p", o.p, "prime / characteristic");
  sub->add_option("--d", o.d, "degree of the field extension");
  sub->add_option("--row", o.row, "table row (1-5)");
  sub->add_option("--f", o.f, "q = 2^f");
  sub->add_option("--q", o.q, "field order");
  sub->add_option("--n", o.n, "degree for fixtures");
  sub->add_option("--k", o.k, "exponent");
  sub->add_option("--l", o.l, "wreath width");
  sub->add_option("--family", o.family, "PSL(2,p) family: borel, d-minus, d-plus, a4, s4, a5");
  sub->add_option("--base", o.base, "wreath base: sym or asc");
  sub->add_flag("--psl", o.psl, "PSL(2,q) branch of pglexam");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EKR analysis of transitive permutation groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--cap", o.cap, "group enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--clique-cap", o.clique_cap, "largest group handled by clique search")->check(CLI::PositiveNumber);
  app.add_option("--enum-limit", o.enum_limit, "maximum cliques listed")->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "clique search threads (default: EKR_WORKERS or 1)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--format", o.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.fallthrough();

  auto* construct = app.add_subcommand("construct", "emit a group description");
  construct->add_option("name", o.name, "construction id")->required();
  add_params(construct, o);

  auto* analyze = app.add_subcommand("analyze", "run checks on a construction or a group description");
  analyze->add_option("name", o.name, "construction id");
  analyze->add_option("--input", o.input, "group description JSON file, - for stdin");
  analyze->add_option("--checks", o.checks, "max,strict,sharply,frobenius,prime-power,subgroups");
  add_params(analyze, o);

  auto* psl2 = app.add_subcommand("psl2-analyze", "arithmetic verdicts for PSL(2,p) on cosets of a maximal subgroup");
  psl2->add_option("--p", o.p, "prime p >= 5")->required();
  psl2->add_option("--family", o.family, "borel, d-minus, d-plus, a4, s4, a5")->required();

  auto* verify = app.add_subcommand("verify-paper", "replay the claim manifest");
  verify->add_option("--only", o.only, "comma separated claim ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*construct) return cmd_construct(o);
    if (*analyze) return cmd_analyze(o);
    if (*psl2) return cmd_psl2(o);
    if (*verify) return cmd_verify(o);
  } catch (const json::exception& e) {
    std::cerr << "ekr: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
