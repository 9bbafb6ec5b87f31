#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qham {

/// Canonical check-group order: structure, uniform, tridiagonal, entrywise,
/// spectrum, qpoly, modules, audit.
const std::vector<std::string>& suite_groups();

struct SuiteOptions {
  int D = 1;
  int n = 3;
  std::vector<std::string> suites;  // empty means all groups
  bool timings = false;             // opt-in: timing fields break byte-stability
};

/// Runs the selected groups on one instance and assembles the JSON report
/// (schema "qham-report/1"). Group selection controls what is attempted, but
/// a failure in a shared dependency (graph construction, idempotent
/// construction) is always reported; checks whose data is unavailable are
/// reported as "skipped". Throws std::invalid_argument on unknown group names.
nlohmann::ordered_json run_suites(const SuiteOptions& opts);

/// True when no check in the report failed.
bool report_passes(const nlohmann::ordered_json& report);

std::string render_report(const nlohmann::ordered_json& report);

}  // namespace qham
