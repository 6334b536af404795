#include "ekr/ekr.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "ekr/manifest.hpp"

struct ekr_config {
  ekr::AnalysisConfig cfg;
};
struct ekr_construction {
  ekr::ConstructionResult c;
};
struct ekr_report {
  ekr::AnalyzeOutcome out;
};
struct ekr_manifest {
  ekr::Manifest m;
};

namespace {

thread_local std::string last_error;

ekr_status fail(ekr_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

ekr_status status_of(ekr::ErrorCode c) {
  switch (c) {
    case ekr::ErrorCode::InvalidArgument: return EKR_ERR_INVALID;
    case ekr::ErrorCode::Parse: return EKR_ERR_PARSE;
    case ekr::ErrorCode::CapExceeded: return EKR_ERR_CAP;
    case ekr::ErrorCode::NotComputed: return EKR_NOT_COMPUTED;
    case ekr::ErrorCode::Internal: return EKR_ERR_INTERNAL;
  }
  return EKR_ERR_INTERNAL;
}

// every entry point funnels through here so no exception crosses the C boundary
template <class F>
ekr_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ekr::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::parse_error& e) {
    return fail(EKR_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(EKR_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EKR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EKR_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const ekr::AnalysisConfig& config_of(const ekr_config* c) {
  static const ekr::AnalysisConfig defaults;
  return c ? c->cfg : defaults;
}

ekr_status set_positive(ekr_config* cfg, std::uint64_t v, const char* what, auto&& assign) {
  if (!cfg) return fail(EKR_ERR_INVALID, "null config");
  if (v == 0) return fail(EKR_ERR_INVALID, std::string(what) + " must be positive");
  assign(cfg->cfg, v);
  last_error.clear();
  return EKR_OK;
}

std::vector<std::string> split_csv(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

extern "C" {

const char* ekr_version(void) { return "1.0.0"; }
const char* ekr_last_error(void) { return last_error.c_str(); }
void ekr_string_free(char* s) { std::free(s); }

ekr_status ekr_config_new(ekr_config** out) {
  return guarded([&] {
    if (!out) return fail(EKR_ERR_INVALID, "null output pointer");
    *out = new ekr_config;
    return EKR_OK;
  });
}
void ekr_config_free(ekr_config* cfg) { delete cfg; }

ekr_status ekr_config_set_enumeration_cap(ekr_config* cfg, uint64_t cap) {
  return set_positive(cfg, cap, "enumeration cap", [](auto& c, auto v) { c.enumeration_cap = v; });
}
ekr_status ekr_config_set_clique_cap(ekr_config* cfg, uint64_t cap) {
  return set_positive(cfg, cap, "clique cap", [](auto& c, auto v) { c.clique_cap = v; });
}
ekr_status ekr_config_set_enum_limit(ekr_config* cfg, uint64_t limit) {
  return set_positive(cfg, limit, "enumeration limit", [](auto& c, auto v) { c.enum_limit = v; });
}
ekr_status ekr_config_set_workers(ekr_config* cfg, uint32_t workers) {
  return set_positive(cfg, workers, "worker count", [](auto& c, auto v) { c.workers = static_cast<unsigned>(v); });
}
ekr_status ekr_config_set_node_budget(ekr_config* cfg, uint64_t nodes) {
  return set_positive(cfg, nodes, "node budget", [](auto& c, auto v) { c.node_budget = v; });
}

ekr_status ekr_construct(const char* name, const char* params_json, const ekr_config* cfg, ekr_construction** out) {
  return guarded([&] {
    if (!name || !out) return fail(EKR_ERR_INVALID, "null argument");
    const auto params = params_json && *params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
    auto c = ekr::construct(name, params, config_of(cfg).enumeration_cap);
    *out = new ekr_construction{std::move(c)};
    return EKR_OK;
  });
}

ekr_status ekr_construction_parse(const char* json, ekr_construction** out) {
  return guarded([&] {
    if (!json || !out) return fail(EKR_ERR_INVALID, "null argument");
    auto c = ekr::construction_from_json(nlohmann::json::parse(json));
    *out = new ekr_construction{std::move(c)};
    return EKR_OK;
  });
}

ekr_status ekr_construction_json(const ekr_construction* c, char** out) {
  return guarded([&] {
    if (!c || !out) return fail(EKR_ERR_INVALID, "null argument");
    *out = dup(ekr::to_json(c->c).dump(2));
    return EKR_OK;
  });
}

size_t ekr_construction_degree(const ekr_construction* c) { return c ? c->c.action.degree() : 0; }
void ekr_construction_free(ekr_construction* c) { delete c; }

ekr_status ekr_analyze(const ekr_construction* c, const char* checks, const ekr_config* cfg, ekr_report** out) {
  return guarded([&] {
    if (!c || !out) return fail(EKR_ERR_INVALID, "null argument");
    auto r = ekr::analyze(c->c, ekr::parse_checks(checks ? checks : ""), config_of(cfg));
    const bool nc = r.not_computed;
    *out = new ekr_report{std::move(r)};
    if (nc) return fail(EKR_NOT_COMPUTED, "some checks were not computed under the configured caps");
    return EKR_OK;
  });
}

ekr_status ekr_report_json(const ekr_report* r, char** out) {
  return guarded([&] {
    if (!r || !out) return fail(EKR_ERR_INVALID, "null argument");
    *out = dup(r->out.report.dump(2));
    return EKR_OK;
  });
}

int ekr_report_not_computed(const ekr_report* r) { return r && r->out.not_computed ? 1 : 0; }
void ekr_report_free(ekr_report* r) { delete r; }

ekr_status ekr_psl2_analyze(uint32_t p, const char* family, char** out_json) {
  return guarded([&] {
    if (!family || !out_json) return fail(EKR_ERR_INVALID, "null argument");
    *out_json = dup(ekr::to_json(ekr::psl2_analyze(p, ekr::parse_psl2_family(family))).dump(2));
    return EKR_OK;
  });
}

ekr_status ekr_verify_paper(const char* only, const ekr_config* cfg, ekr_manifest** out) {
  return guarded([&] {
    if (!out) return fail(EKR_ERR_INVALID, "null output pointer");
    *out = new ekr_manifest{ekr::verify_paper(split_csv(only), config_of(cfg))};
    return EKR_OK;
  });
}

ekr_status ekr_claim_ids(char** out_json) {
  return guarded([&] {
    if (!out_json) return fail(EKR_ERR_INVALID, "null output pointer");
    *out_json = dup(nlohmann::json(ekr::claim_ids()).dump());
    return EKR_OK;
  });
}

ekr_status ekr_manifest_render(const ekr_manifest* m, const char* format, char** out) {
  return guarded([&] {
    if (!m || !out) return fail(EKR_ERR_INVALID, "null argument");
    const std::string f = format ? format : "json";
    if (f == "json") {
      *out = dup(ekr::to_json(m->m).dump(2) + "\n");
    } else if (f == "table") {
      *out = dup(ekr::render_table(m->m));
    } else if (f == "csv") {
      *out = dup(ekr::render_csv(m->m));
    } else {
      return fail(EKR_ERR_INVALID, "unknown format '" + f + "' (json, table, csv)");
    }
    return EKR_OK;
  });
}

int ekr_manifest_all_passed(const ekr_manifest* m) { return m && m->m.all_passed() ? 1 : 0; }
size_t ekr_manifest_size(const ekr_manifest* m) { return m ? m->m.claims.size() : 0; }
void ekr_manifest_free(ekr_manifest* m) { delete m; }

}  // extern "C"
