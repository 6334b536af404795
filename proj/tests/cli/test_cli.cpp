#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

#ifndef EKR_CLI
#error "EKR_CLI must point at the ekr binary"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout captured, stderr discarded
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" EKR_CLI "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("construct") {
  const auto nobo = run("construct nobo --p 5 --d 1");
  CHECK(nobo.code == 0);
  CHECK(json::parse(nobo.out)["degree"] == 30);
  CHECK(json::parse(nobo.out)["schema"] == "ekr/1");
  CHECK(json::parse(run("construct table1 --row 5").out)["degree"] == 18);
  CHECK(json::parse(run("construct asc --f 2").out)["degree"] == 10);
  CHECK(json::parse(run("construct psl2 --params '{\"p\":7,\"family\":\"s4\"}'").out)["degree"] == 7);

  const auto csv = run("--format csv construct table1 --row 1");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("schema,key,value\n", 0) == 0);
  CHECK(csv.out.find("ekr/1,K_over_H,10") != std::string::npos);
}

TEST_CASE("analyze") {
  const auto row1 = run("analyze table1 --row 1 --checks max");
  CHECK(row1.code == 0);
  const auto j = json::parse(row1.out);
  CHECK(j["rho"]["num"] == 10);
  CHECK(j["rho"]["den"] == 1);

  const auto sl = json::parse(run("analyze sl23 --checks max,strict").out);
  CHECK(sl["rho"]["num"] == 1);
  CHECK(sl["verdicts"]["strict_ekr"] == "holds");

  const auto syl = json::parse(run("analyze sylow --p 3 --k 2 --checks prime-power").out);
  CHECK(syl["verdicts"]["ekr"] == "holds");
  CHECK(syl["method"] == "sharply-transitive-certificate");

  // a description produced by construct feeds back into analyze
  const std::string path = "cli_test_asc.json";
  {
    std::ofstream f(path);
    f << run("construct asc --f 2").out;
  }
  const auto a = json::parse(run("analyze --input " + path + " --checks max,subgroups").out);
  CHECK(a["max_intersecting"] == 12);
  std::remove(path.c_str());

  const auto table = run("--format table analyze sl23");
  CHECK(table.code == 0);
  CHECK(table.out.find("max_intersecting") != std::string::npos);
}

TEST_CASE("verify-paper") {
  const auto one = run("--format table verify-paper --only table1-row1");
  CHECK(one.code == 0);
  CHECK(one.out.find("table1-row1  pass") != std::string::npos);

  const auto asc = json::parse(run("verify-paper --only asc-q4-exact-rho").out);
  REQUIRE(asc["claims"].size() == 1);
  CHECK(asc["claims"][0]["status"] == "pass");
  CHECK(asc["claims"][0]["computed"].get<std::string>().find("rho 2") != std::string::npos);
  CHECK(asc["claims"][0]["note"].get<std::string>().find("matches q/2") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("verify-paper --only table1-row5").code == 0);
  CHECK(run("verify-paper --only sl23-non-coset-witness").code == 1);  // the printed example does not reproduce
  CHECK(run("construct bogus").code == 2);
  CHECK(run("construct nobo --p 4 --d 1").code == 2);
  CHECK(run("construct nobo --params '{broken'").code == 2);
  CHECK(run("analyze --input /nonexistent.json").code == 2);
  CHECK(run("analyze sl23 --checks nonsense").code == 2);
  CHECK(run("--format xml analyze sl23").code == 2);
  CHECK(run("verify-paper --only nope").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("analyze sl23", "EKR_WORKERS=zero").code == 2);
  CHECK(run("--cap 1000 construct table1 --row 3").code == 3);
  CHECK(run("analyze table1 --row 3 --checks max").code == 4);
  CHECK(run("--clique-cap 10 analyze symmetric --n 4").code == 4);
  CHECK(run("--help").code == 0);
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::string args : {"analyze table1 --row 5 --checks max,strict", "--workers 4 analyze nobo --p 3 --d 1 --checks max,strict",
                                 "construct nobo --p 2 --d 2", "--format csv verify-paper --only nobo-q4,wreath-lift-sym3"}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run("analyze table1 --row 5", "EKR_WORKERS=3").out == run("analyze table1 --row 5 --workers 1").out);
}
