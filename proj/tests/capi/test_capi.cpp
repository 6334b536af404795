#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "ekr/ekr.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ekr_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("config setters reject zero") {
  ekr_config* cfg = nullptr;
  REQUIRE(ekr_config_new(&cfg) == EKR_OK);
  CHECK(ekr_config_set_clique_cap(cfg, 0) == EKR_ERR_INVALID);
  CHECK(std::string(ekr_last_error()).find("positive") != std::string::npos);
  CHECK(ekr_config_set_workers(cfg, 2) == EKR_OK);
  CHECK(std::string(ekr_last_error()).empty());
  CHECK(ekr_config_set_enum_limit(nullptr, 5) == EKR_ERR_INVALID);
  ekr_config_free(cfg);
  ekr_config_free(nullptr);
}

TEST_CASE("construct and serialise") {
  ekr_construction* c = nullptr;
  REQUIRE(ekr_construct("nobo", R"({"p":5,"d":1})", nullptr, &c) == EKR_OK);
  CHECK(ekr_construction_degree(c) == 30);
  char* text = nullptr;
  REQUIRE(ekr_construction_json(c, &text) == EKR_OK);
  const auto j = json::parse(take(text));
  CHECK(j["schema"] == "ekr/1");
  CHECK(j["degree"] == 30);

  // the description round-trips through the parser
  ekr_construction* back = nullptr;
  REQUIRE(ekr_construction_parse(j.dump().c_str(), &back) == EKR_OK);
  CHECK(ekr_construction_degree(back) == 30);
  ekr_construction_free(back);
  ekr_construction_free(c);

  ekr_construction* t = nullptr;
  REQUIRE(ekr_construct("table1", R"({"row":5})", nullptr, &t) == EKR_OK);
  CHECK(ekr_construction_degree(t) == 18);
  ekr_construction_free(t);
}

TEST_CASE("construct errors map to status codes") {
  ekr_construction* c = nullptr;
  CHECK(ekr_construct("nope", nullptr, nullptr, &c) == EKR_ERR_INVALID);
  CHECK(c == nullptr);
  CHECK(ekr_construct("nobo", "{not json", nullptr, &c) == EKR_ERR_PARSE);
  CHECK(ekr_construct("nobo", R"({"p":4,"d":1})", nullptr, &c) == EKR_ERR_INVALID);
  CHECK(ekr_construct(nullptr, nullptr, nullptr, &c) == EKR_ERR_INVALID);

  ekr_config* cfg = nullptr;
  REQUIRE(ekr_config_new(&cfg) == EKR_OK);
  REQUIRE(ekr_config_set_enumeration_cap(cfg, 1000) == EKR_OK);
  CHECK(ekr_construct("table1", R"({"row":3})", cfg, &c) == EKR_ERR_CAP);
  CHECK(std::strlen(ekr_last_error()) > 0);
  ekr_config_free(cfg);

  CHECK(ekr_construction_parse(R"({"degree":3})", &c) == EKR_ERR_PARSE);
  CHECK(ekr_construction_parse(R"j({"degree":3,"generators":["(0 5)"]})j", &c) != EKR_OK);
}

TEST_CASE("analyze") {
  ekr_construction* c = nullptr;
  REQUIRE(ekr_construct("sl23", nullptr, nullptr, &c) == EKR_OK);
  ekr_report* r = nullptr;
  REQUIRE(ekr_analyze(c, "max,strict,sharply", nullptr, &r) == EKR_OK);
  CHECK(ekr_report_not_computed(r) == 0);
  char* text = nullptr;
  REQUIRE(ekr_report_json(r, &text) == EKR_OK);
  const auto j = json::parse(take(text));
  CHECK(j["max_intersecting"] == 3);
  CHECK(j["rho"]["num"] == 1);
  CHECK(j["verdicts"]["ekr"] == "holds");
  CHECK(j["sharply_transitive"]["found"] == true);
  ekr_report_free(r);

  r = nullptr;
  CHECK(ekr_analyze(c, "max,unknown", nullptr, &r) == EKR_ERR_INVALID);
  CHECK(r == nullptr);
  ekr_construction_free(c);

  // a group above the clique cap still yields a report
  ekr_construction* big = nullptr;
  REQUIRE(ekr_construct("symmetric", R"({"n":7})", nullptr, &big) == EKR_OK);
  CHECK(ekr_analyze(big, "max", nullptr, &r) == EKR_NOT_COMPUTED);
  REQUIRE(r != nullptr);
  CHECK(ekr_report_not_computed(r) == 1);
  REQUIRE(ekr_report_json(r, &text) == EKR_OK);
  CHECK(json::parse(take(text))["checks"]["max"]["status"] == "not-computed");
  ekr_report_free(r);
  ekr_construction_free(big);
}

TEST_CASE("psl2 analyzer") {
  char* text = nullptr;
  REQUIRE(ekr_psl2_analyze(13, "d-minus", &text) == EKR_OK);
  const auto j = json::parse(take(text));
  CHECK(j["max_intersecting_subgroup"] == 12);
  CHECK(j["weak_ekr"] == true);
  CHECK(j["strict_weak_ekr"] == false);
  CHECK(ekr_psl2_analyze(7, "d-plus", &text) == EKR_ERR_INVALID);
  CHECK(ekr_psl2_analyze(13, "octahedral", &text) == EKR_ERR_INVALID);
}

TEST_CASE("manifest") {
  char* ids = nullptr;
  REQUIRE(ekr_claim_ids(&ids) == EKR_OK);
  const auto list = json::parse(take(ids));
  CHECK(list.size() >= 15);

  ekr_manifest* m = nullptr;
  REQUIRE(ekr_verify_paper("table1-row1,asc-q4-exact-rho", nullptr, &m) == EKR_OK);
  CHECK(ekr_manifest_size(m) == 2);
  CHECK(ekr_manifest_all_passed(m) == 1);
  char* text = nullptr;
  REQUIRE(ekr_manifest_render(m, "csv", &text) == EKR_OK);
  const auto csv = take(text);
  CHECK(csv.rfind("schema,id,", 0) == 0);
  CHECK(csv.find("asc-q4-exact-rho") != std::string::npos);
  REQUIRE(ekr_manifest_render(m, "json", &text) == EKR_OK);
  const auto j = json::parse(take(text));
  CHECK(j["claims"][1]["note"].get<std::string>().find("q/2") != std::string::npos);
  CHECK(ekr_manifest_render(m, "xml", &text) == EKR_ERR_INVALID);
  ekr_manifest_free(m);

  CHECK(ekr_verify_paper("no-such-claim", nullptr, &m) == EKR_ERR_INVALID);
}
