#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qham/report.hpp"

using namespace qham;
using nlohmann::ordered_json;

namespace {

std::set<std::string> check_names(const ordered_json& rep) {
  std::set<std::string> names;
  for (const auto& c : rep["checks"]) names.insert(c["name"].get<std::string>());
  return names;
}

}  // namespace

TEST_CASE("suite_groups is the canonical fixed order") {
  const std::vector<std::string> expect = {"structure", "uniform",  "tridiagonal", "entrywise",
                                           "spectrum",  "qpoly",    "modules",     "audit"};
  CHECK(suite_groups() == expect);
}

TEST_CASE("full run on (1,3): all checks pass") {
  SuiteOptions opts;
  opts.D = 1;
  opts.n = 3;
  const ordered_json rep = run_suites(opts);
  CHECK(rep["schema"] == "qham-report/1");
  CHECK(rep["instance"]["D"] == 1);
  CHECK(rep["instance"]["n"] == 3);
  CHECK(rep["instance"]["vertices"] == 3);
  CHECK(rep["instance"]["edges"] == 2);
  CHECK(rep["instance"]["radicand"] == 2);
  CHECK(rep["instance"]["scale"] == 1);
  CHECK(rep["suite"].size() == 8);
  CHECK(rep["checks"].size() == 34);
  for (const auto& c : rep["checks"]) CHECK(c["verdict"] == "pass");
  CHECK(rep["verdict"] == "pass");
  CHECK(report_passes(rep));
}

TEST_CASE("selection: audit alone runs no graph construction") {
  SuiteOptions opts;
  opts.D = 3;
  opts.n = 5;
  opts.suites = {"audit"};
  const ordered_json rep = run_suites(opts);
  CHECK(!rep["instance"].contains("edges"));
  const auto names = check_names(rep);
  CHECK(names.size() == 6);
  for (const auto& name : names) CHECK(name.rfind("audit.", 0) == 0);
  CHECK(rep.contains("modules"));
  CHECK(!rep.contains("spectrum"));
  CHECK(rep["verdict"] == "pass");
}

TEST_CASE("selection: qpoly alone emits only qpoly checks") {
  SuiteOptions opts;
  opts.D = 1;
  opts.n = 4;
  opts.suites = {"qpoly"};
  const ordered_json rep = run_suites(opts);
  const auto names = check_names(rep);
  for (const auto& name : names) CHECK(name.rfind("qpoly.", 0) == 0);
  CHECK(names.count("qpoly.zero-blocks") == 1);
  CHECK(names.count("qpoly.dual-generation") == 1);
  CHECK(!rep.contains("spectrum"));
  CHECK(rep["verdict"] == "pass");
}

TEST_CASE("selection: spectrum alone carries the eigenvalue fragment") {
  SuiteOptions opts;
  opts.D = 1;
  opts.n = 3;
  opts.suites = {"spectrum"};
  const ordered_json rep = run_suites(opts);
  REQUIRE(rep.contains("spectrum"));
  const auto& evs = rep["spectrum"]["eigenvalues"];
  REQUIRE(evs.size() == 3);
  CHECK(evs[0]["coefficient"] == 1);
  CHECK(evs[0]["radicand"] == 2);
  CHECK(evs[0]["value"] == "0 + 1*sqrt(2)");
  CHECK(evs[0]["multiplicity"] == "1");
  CHECK(evs[1]["coefficient"] == 0);
  CHECK(evs[2]["coefficient"] == -1);
  CHECK(rep["spectrum"]["note"] == "eigenvalue index range: i = 0..2D (2D+1 distinct eigenvalues)");
}

TEST_CASE("audit fragment at (2,3): module table totals 9") {
  SuiteOptions opts;
  opts.D = 2;
  opts.n = 3;
  opts.suites = {"audit"};
  const ordered_json rep = run_suites(opts);
  const auto& mods = rep["modules"];
  CHECK(mods["note"] == "multiplicity sums range over admissible (r, d) pairs only");
  REQUIRE(mods["module_types"].size() == 4);
  CHECK(mods["module_types"][0]["r"] == 0);
  CHECK(mods["module_types"][0]["d"] == 2);
  CHECK(mods["module_types"][0]["multiplicity"] == "1");
  CHECK(mods["module_types"][0]["dimension"] == 3);
  CHECK(mods["total"] == "9");
  CHECK(mods["expected"] == "9");
}

TEST_CASE("unknown suite names are rejected") {
  SuiteOptions opts;
  opts.suites = {"spectral"};
  CHECK_THROWS_AS(run_suites(opts), std::invalid_argument);
  opts.suites = {"structure", ""};
  CHECK_THROWS_AS(run_suites(opts), std::invalid_argument);
}

TEST_CASE("reports are deterministic") {
  SuiteOptions opts;
  opts.D = 2;
  opts.n = 4;
  opts.suites = {"structure", "spectrum", "modules"};
  const std::string a = render_report(run_suites(opts));
  const std::string b = render_report(run_suites(opts));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  CHECK(a.front() == '{');
}

TEST_CASE("timings are opt-in") {
  SuiteOptions opts;
  opts.D = 1;
  opts.n = 3;
  opts.suites = {"uniform"};
  const ordered_json plain = run_suites(opts);
  CHECK(!plain["checks"][0].contains("ms"));
  opts.timings = true;
  const ordered_json timed = run_suites(opts);
  REQUIRE(timed["checks"].size() == 1);
  CHECK(timed["checks"][0].contains("ms"));
  CHECK(timed["checks"][0]["ms"].get<double>() >= 0.0);
}

TEST_CASE("report_passes looks only at check verdicts") {
  ordered_json rep;
  rep["checks"] = ordered_json::array();
  CHECK(report_passes(rep));
  rep["checks"].push_back({{"name", "x"}, {"verdict", "pass"}});
  CHECK(report_passes(rep));
  rep["checks"].push_back({{"name", "y"}, {"verdict", "skipped"}});
  CHECK(report_passes(rep));
  rep["checks"].push_back({{"name", "z"}, {"verdict", "fail"}});
  CHECK(!report_passes(rep));
  ordered_json empty;
  CHECK(!report_passes(empty));
}

TEST_CASE("check names come out in canonical group order") {
  SuiteOptions opts;
  opts.D = 1;
  opts.n = 3;
  // request order must not matter
  opts.suites = {"audit", "uniform", "structure"};
  const ordered_json rep = run_suites(opts);
  CHECK(rep["suite"][0] == "structure");
  CHECK(rep["suite"][1] == "uniform");
  CHECK(rep["suite"][2] == "audit");
  const auto& checks = rep["checks"];
  CHECK(checks[0]["name"].get<std::string>().rfind("structure.", 0) == 0);
  bool seen_uniform = false;
  for (const auto& c : checks) {
    const std::string name = c["name"].get<std::string>();
    if (name.rfind("uniform.", 0) == 0) seen_uniform = true;
    if (name.rfind("audit.", 0) == 0) CHECK(seen_uniform);
  }
}
