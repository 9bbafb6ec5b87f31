#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qham/hamming.hpp"
#include "qham/qnum.hpp"
#include "qham/report.hpp"
#include "qham/spectral.hpp"
#include "qham/terwilliger.hpp"

namespace {

using nlohmann::ordered_json;

qham::Integer instance_size(int D, int n) {
  qham::Integer size(1);
  for (int k = 0; k < D; ++k) size *= n;
  return size;
}

// exit 2 on violation; cap 0 disables the guard
bool cap_ok(int D, int n, std::int64_t cap) {
  if (cap <= 0) return true;
  const qham::Integer size = instance_size(D, n);
  if (size <= cap) return true;
  std::cerr << "error: instance size " << size.get_str() << " exceeds cap (" << cap << ")\n";
  return false;
}

std::vector<std::string> parse_suite_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    if (token == "all") return {};
    out.push_back(token);
  }
  return out;
}

bool validate_suites(const std::vector<std::string>& suites) {
  for (const auto& s : suites) {
    bool known = false;
    for (const auto& g : qham::suite_groups()) known = known || (g == s);
    if (!known) {
      std::cerr << "error: unknown suite group: " << s << "\n";
      return false;
    }
  }
  return true;
}

int write_output(const ordered_json& doc, const std::string& out_path) {
  const std::string text = qham::render_report(doc);
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 2;
  }
  f << text;
  return f ? 0 : 2;
}

void print_check_table(const ordered_json& report) {
  if (!isatty(fileno(stderr))) return;
  std::ostringstream os;
  os << "D=" << report["instance"]["D"] << " n=" << report["instance"]["n"] << "\n";
  for (const auto& c : report["checks"]) {
    os << "  " << std::left << std::setw(38) << c["name"].get<std::string>() << " "
       << c["verdict"].get<std::string>() << "\n";
    if (c["verdict"] == "fail") os << "    " << c["witness"].get<std::string>() << "\n";
  }
  os << "verdict: " << report["verdict"].get<std::string>() << "\n";
  std::cerr << os.str();
}

int run_verify(int D, int n, const std::string& suite_csv, std::int64_t cap, const std::string& out,
               bool timings, const std::string& dump_edges) {
  if (!cap_ok(D, n, cap)) return 2;
  const std::vector<std::string> suites = parse_suite_csv(suite_csv);
  if (!validate_suites(suites)) return 2;
  qham::SuiteOptions opts;
  opts.D = D;
  opts.n = n;
  opts.suites = suites;
  opts.timings = timings;
  ordered_json report;
  try {
    report = qham::run_suites(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!dump_edges.empty()) {
    std::ofstream f(dump_edges, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << dump_edges << " for writing\n";
      return 2;
    }
    qham::full_bipartite(qham::make_space(D, n)).write_edges(f);
  }
  if (const int rc = write_output(report, out)) return rc;
  print_check_table(report);
  return qham::report_passes(report) ? 0 : 1;
}

int run_sweep(int d_max, int n_max, int jobs, const std::string& suite_csv, std::int64_t cap,
              const std::string& out, bool timings) {
  if (!cap_ok(d_max, n_max, cap)) return 2;
  const std::vector<std::string> suites = parse_suite_csv(suite_csv);
  if (!validate_suites(suites)) return 2;

  struct Cell {
    int D;
    int n;
    ordered_json report;
    std::string error;
  };
  std::vector<Cell> cells;
  for (int D = 1; D <= d_max; ++D) {
    for (int n = 3; n <= n_max; ++n) cells.push_back({D, n, {}, {}});
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      Cell& cell = cells[idx];
      qham::SuiteOptions opts;
      opts.D = cell.D;
      opts.n = cell.n;
      opts.suites = suites;
      opts.timings = timings;
      try {
        cell.report = qham::run_suites(opts);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(jobs), cells.size());
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool all_pass = true;
  ordered_json summary = ordered_json::array();
  ordered_json reports = ordered_json::array();
  for (const Cell& cell : cells) {
    ordered_json row;
    row["D"] = cell.D;
    row["n"] = cell.n;
    if (!cell.error.empty()) {
      row["verdict"] = "error";
      row["witness"] = cell.error;
      all_pass = false;
    } else {
      const bool pass = qham::report_passes(cell.report);
      row["verdict"] = pass ? "pass" : "fail";
      all_pass = all_pass && pass;
      reports.push_back(cell.report);
    }
    summary.push_back(std::move(row));
  }

  ordered_json doc;
  doc["schema"] = "qham-sweep/1";
  doc["grid"] = {{"d_max", d_max}, {"n_max", n_max}, {"instances", cells.size()}};
  doc["summary"] = std::move(summary);
  doc["reports"] = std::move(reports);
  doc["verdict"] = all_pass ? "pass" : "fail";
  if (const int rc = write_output(doc, out)) return rc;
  if (isatty(fileno(stderr))) {
    for (const auto& row : doc["summary"]) {
      std::cerr << "D=" << row["D"] << " n=" << row["n"] << " " << row["verdict"].get<std::string>() << "\n";
    }
    std::cerr << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  }
  return all_pass ? 0 : 1;
}

// "primary" | "e1-diff" | "idx:val,idx:val,..."
std::vector<qham::QuadScalar> parse_seed(const qham::TerwilligerContext& ctx, const std::string& spec) {
  if (spec == "primary") return qham::seed_primary(ctx);
  if (spec == "e1-diff") return qham::seed_e1_diff(ctx);
  std::vector<qham::QuadScalar> seed(ctx.order());
  std::vector<bool> set(ctx.order(), false);
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw std::invalid_argument("seed entry \"" + token + "\" is not idx:val");
    }
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoull(token.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("seed index \"" + token.substr(0, colon) + "\" is not a vertex index");
    }
    if (idx >= ctx.order()) {
      throw std::invalid_argument("seed index " + std::to_string(idx) + " out of range (order " +
                                  std::to_string(ctx.order()) + ")");
    }
    if (set[idx]) throw std::invalid_argument("duplicate seed index " + std::to_string(idx));
    set[idx] = true;
    seed[idx] = qham::QuadScalar::parse(token.substr(colon + 1));
  }
  bool nonzero = false;
  for (const auto& v : seed) nonzero = nonzero || !v.is_zero();
  if (!nonzero) throw std::invalid_argument("seed vector is zero");
  return seed;
}

int run_module(int D, int n, const std::string& seed_spec, std::int64_t cap, const std::string& out) {
  if (!cap_ok(D, n, cap)) return 2;
  qham::SubmoduleReport rep;
  try {
    const qham::TerwilligerContext ctx = qham::build_context(qham::full_bipartite(qham::make_space(D, n)));
    rep = qham::generate_submodule(ctx, parse_seed(ctx, seed_spec));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  ordered_json doc;
  doc["schema"] = "qham-module/1";
  doc["instance"] = {{"D", D}, {"n", n}, {"vertices", instance_size(D, n).get_str()}};
  doc["seed"] = seed_spec;
  ordered_json mod;
  mod["dimension"] = rep.dimension;
  mod["endpoint"] = rep.endpoint;
  mod["diameter"] = rep.diameter;
  mod["thin"] = rep.thin;
  mod["contiguous"] = rep.contiguous;
  mod["slice_ranks"] = rep.slice_ranks;
  if (rep.basis_attempted) {
    mod["raising_coefficients"] = rep.raising_coefficients;
    mod["basis"] = rep.basis.pass ? "pass" : "fail";
    if (!rep.basis.pass) mod["witness"] = rep.basis.witness;
  } else {
    mod["basis"] = "not attempted";
  }
  doc["module"] = std::move(mod);
  const bool pass = !rep.basis_attempted || rep.basis.pass;
  doc["verdict"] = pass ? "pass" : "fail";
  if (const int rc = write_output(doc, out)) return rc;
  if (isatty(fileno(stderr))) {
    std::cerr << "r=" << rep.endpoint << " d=" << rep.diameter << " dim=" << rep.dimension
              << (rep.thin ? " thin" : " not thin") << " verdict: " << doc["verdict"].get<std::string>()
              << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification for the full bipartite graph of a Hamming graph"};
  app.require_subcommand(1);

  int D = 1, n = 3;
  int d_max = 1, n_max = 3;
  int jobs = 1;
  std::int64_t cap = 1024;
  std::string suite = "all";
  std::string out;
  std::string dump_edges;
  std::string seed = "primary";
  bool timings = false;

  CLI::App* verify = app.add_subcommand("verify", "run verification suites on one instance");
  verify->add_option("--d", D, "Hamming graph diameter D (>= 1)")->required()->check(CLI::PositiveNumber);
  verify->add_option("--n", n, "alphabet size n (>= 3)")->required()->check(CLI::Range(3, 1 << 20));
  verify->add_option("--suite", suite, "comma-separated suite groups, or \"all\"");
  verify->add_option("--cap", cap, "vertex-count guard, 0 disables")
      ->envname("QHAM_CAP")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out, "write the JSON report to this path instead of stdout");
  verify->add_flag("--timings", timings, "include per-check wall time (breaks byte-stability)");
  verify->add_option("--dump-edges", dump_edges, "also write the edge list to this path");

  CLI::App* sweep = app.add_subcommand("sweep", "run verification over a parameter grid");
  sweep->add_option("--d-max", d_max, "grid upper bound for D (grid starts at 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", n_max, "grid upper bound for n (grid starts at 3)")
      ->required()
      ->check(CLI::Range(3, 1 << 20));
  sweep->add_option("--jobs", jobs, "worker threads across instances")->check(CLI::PositiveNumber);
  sweep->add_option("--suite", suite, "comma-separated suite groups, or \"all\"");
  sweep->add_option("--cap", cap, "vertex-count guard, 0 disables")
      ->envname("QHAM_CAP")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", out, "write the JSON report to this path instead of stdout");
  sweep->add_flag("--timings", timings, "include per-check wall time (breaks byte-stability)");

  CLI::App* module = app.add_subcommand("module", "close a seed vector into a module and analyze it");
  module->add_option("--d", D, "Hamming graph diameter D (>= 1)")->required()->check(CLI::PositiveNumber);
  module->add_option("--n", n, "alphabet size n (>= 3)")->required()->check(CLI::Range(3, 1 << 20));
  module->add_option("--seed", seed, "\"primary\", \"e1-diff\", or \"idx:val,idx:val,...\"");
  module->add_option("--cap", cap, "vertex-count guard, 0 disables")
      ->envname("QHAM_CAP")
      ->check(CLI::NonNegativeNumber);
  module->add_option("--out", out, "write the JSON report to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(D, n, suite, cap, out, timings, dump_edges);
    if (sweep->parsed()) return run_sweep(d_max, n_max, jobs, suite, cap, out, timings);
    return run_module(D, n, seed, cap, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
