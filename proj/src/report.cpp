#include "qham/report.hpp"

#include <chrono>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qham/hamming.hpp"
#include "qham/numeric_oracle.hpp"
#include "qham/spectral.hpp"
#include "qham/terwilliger.hpp"
#include "qham/tmodules.hpp"

namespace qham {
namespace {

using nlohmann::ordered_json;

class Runner {
 public:
  explicit Runner(bool timings) : timings_(timings) {}

  template <class F>
  void run(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    ordered_json details;
    try {
      r = f(details);
    } catch (const std::exception& e) {
      r = CheckResult::failed(std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    ordered_json c;
    c["name"] = name;
    c["verdict"] = r.pass ? "pass" : "fail";
    if (!r.pass) {
      c["witness"] = r.witness;
      all_pass_ = false;
    }
    if (!details.is_null()) c["details"] = details;
    if (timings_) c["ms"] = ms;
    checks_.push_back(std::move(c));
  }

  void skip(const std::string& name, const std::string& reason) {
    ordered_json c;
    c["name"] = name;
    c["verdict"] = "skipped";
    c["witness"] = reason;
    checks_.push_back(std::move(c));
  }

  const ordered_json& checks() const { return checks_; }
  bool all_pass() const { return all_pass_; }

 private:
  bool timings_;
  bool all_pass_ = true;
  ordered_json checks_ = ordered_json::array();
};

// plain function wrapper for checks without details
template <class F>
auto no_details(F&& f) {
  return [g = std::forward<F>(f)](ordered_json&) { return g(); };
}

CheckResult check_partition_sizes(const FullBipartiteGraph& g) {
  const int D = g.space.D;
  const int n = g.space.n;
  std::int64_t total = 0;
  for (int i = 0; i <= D; ++i) {
    const std::int64_t expect = binomial(D, i) * ipow(n - 1, i);
    const std::int64_t got = static_cast<std::int64_t>(g.classes[static_cast<std::size_t>(i)].size());
    if (got != expect) {
      return CheckResult::failed("|class " + std::to_string(i) + "| = " + std::to_string(got) +
                                 ", expected C(D,i)(n-1)^i = " + std::to_string(expect));
    }
    total += got;
  }
  if (total != static_cast<std::int64_t>(g.space.vertex_count)) {
    return CheckResult::failed("classes cover " + std::to_string(total) + " of " +
                               std::to_string(g.space.vertex_count) + " vertices");
  }
  return CheckResult::passed();
}

CheckResult check_intersection_numbers(const FullBipartiteGraph& g) {
  const auto rep = intersection_numbers_around_x(g);
  if (!rep.ok) return CheckResult::failed(rep.witness);
  const int D = g.space.D;
  const int n = g.space.n;
  for (int i = 0; i <= D; ++i) {
    const std::int64_t bi = static_cast<std::int64_t>(D - i) * (n - 1);
    if (rep.b[static_cast<std::size_t>(i)] != bi) {
      return CheckResult::failed("b_" + std::to_string(i) + " = " + std::to_string(rep.b[static_cast<std::size_t>(i)]) +
                                 ", expected (D-i)(n-1) = " + std::to_string(bi));
    }
    if (rep.c[static_cast<std::size_t>(i)] != i) {
      return CheckResult::failed("c_" + std::to_string(i) + " = " + std::to_string(rep.c[static_cast<std::size_t>(i)]) +
                                 ", expected i");
    }
  }
  return CheckResult::passed();
}

CheckResult check_bipartite_connected(const FullBipartiteGraph& g) {
  for (std::size_t u = 0; u < g.adj.size(); ++u) {
    for (std::uint32_t v : g.adj[u]) {
      const int dw = g.weight[u] - g.weight[v];
      if (dw != 1 && dw != -1) {
        return CheckResult::failed("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") joins classes " + std::to_string(g.weight[u]) + " and " +
                                   std::to_string(g.weight[v]));
      }
    }
  }
  const auto dist = bfs_distances(g, g.base);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] < 0) return CheckResult::failed("vertex " + std::to_string(v) + " unreachable from the base");
  }
  return CheckResult::passed();
}

CheckResult check_degree_consistency(const FullBipartiteGraph& g) {
  const int D = g.space.D;
  const int n = g.space.n;
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    const int w = g.weight[v];
    const std::size_t expect = static_cast<std::size_t>(static_cast<std::int64_t>(D - w) * (n - 1) + w);
    if (g.adj[v].size() != expect) {
      return CheckResult::failed("deg(" + std::to_string(v) + ") = " + std::to_string(g.adj[v].size()) +
                                 ", expected b_w + c_w = " + std::to_string(expect));
    }
  }
  return CheckResult::passed();
}

CheckResult check_geodesic_distances(const FullBipartiteGraph& g) {
  const auto dist = bfs_distances(g, g.base);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] != g.weight[v]) {
      return CheckResult::failed("graph distance to " + std::to_string(v) + " is " + std::to_string(dist[v]) +
                                 ", Hamming weight is " + std::to_string(g.weight[v]));
    }
  }
  return CheckResult::passed();
}

// entries of L^3: 3! descending walks exactly on pairs three classes apart at
// Hamming distance three, zero everywhere else
CheckResult check_gamma3(const TerwilligerContext& ctx) {
  const IntMatrix cube = shape_count_matrix(ctx, "lll");
  const auto& g = ctx.graph();
  const std::size_t N = ctx.order();
  std::vector<std::vector<std::uint8_t>> words;
  words.reserve(N);
  for (std::size_t v = 0; v < N; ++v) words.push_back(g.space.decode(v));
  for (std::size_t z = 0; z < N; ++z) {
    for (std::size_t y = 0; y < N; ++y) {
      const bool triple = (g.weight[y] - g.weight[z] == 3) && hamming_distance(words[y], words[z]) == 3;
      const std::int64_t expect = triple ? 6 : 0;
      if (cube.at(z, y) != expect) {
        return CheckResult::failed("L^3 walks from " + std::to_string(y) + " to " + std::to_string(z) + " = " +
                                   std::to_string(cube.at(z, y)) + ", expected " + std::to_string(expect));
      }
    }
  }
  return CheckResult::passed();
}

CheckResult check_module_report(const SubmoduleReport& rep, int endpoint, int diameter,
                                std::size_t dimension, ordered_json& details) {
  details["dimension"] = rep.dimension;
  details["endpoint"] = rep.endpoint;
  details["diameter"] = rep.diameter;
  details["thin"] = rep.thin;
  details["slice_ranks"] = rep.slice_ranks;
  if (!rep.raising_coefficients.empty()) details["raising_coefficients"] = rep.raising_coefficients;

  std::ostringstream bad;
  if (rep.endpoint != endpoint) {
    bad << "endpoint " << rep.endpoint << ", expected " << endpoint;
  } else if (rep.diameter != diameter) {
    bad << "diameter " << rep.diameter << ", expected " << diameter;
  } else if (!rep.thin) {
    bad << "module is not thin";
  } else if (rep.dimension != dimension) {
    bad << "dimension " << rep.dimension << ", expected " << dimension;
  } else if (!rep.basis_attempted) {
    bad << "ladder basis not attempted (slices not contiguous)";
  } else if (!rep.basis.pass) {
    bad << rep.basis.witness;
  }
  return bad.str().empty() ? CheckResult::passed() : CheckResult::failed(bad.str());
}

CheckResult check_admissible_params(int D) {
  std::vector<ModuleParams> brute;
  for (int d = D; d >= 0; --d) {
    for (int r = 0; r <= D; ++r) {
      const bool fits = r >= 0 && d >= 0 && r + d <= D && D <= 2 * r + d;
      if (params_admissible(D, r, d) != fits) {
        return CheckResult::failed("params_admissible(" + std::to_string(r) + ", " + std::to_string(d) +
                                   ") disagrees with the inequalities");
      }
      if (fits) brute.push_back({r, d});
    }
  }
  const auto listed = admissible_params(D);
  if (listed.size() != brute.size()) {
    return CheckResult::failed("admissible_params lists " + std::to_string(listed.size()) + " pairs, expected " +
                               std::to_string(brute.size()));
  }
  for (std::size_t k = 0; k < brute.size(); ++k) {
    if (!(listed[k] == brute[k])) {
      return CheckResult::failed("admissible_params order differs at position " + std::to_string(k));
    }
  }
  return CheckResult::passed();
}

CheckResult check_multiplicity_forms(int D, int n) {
  for (const auto& p : admissible_params(D)) {
    try {
      const Integer f1 = multiplicity_form1(D, n, p.r, p.d);
      const Integer f2 = multiplicity_form2(D, n, p.r, p.d);
      if (f1 != f2) {
        return CheckResult::failed("forms disagree at (r, d) = (" + std::to_string(p.r) + ", " +
                                   std::to_string(p.d) + "): " + f1.get_str() + " vs " + f2.get_str());
      }
      if (f1 < 1) {
        return CheckResult::failed("mult(" + std::to_string(p.r) + ", " + std::to_string(p.d) +
                                   ") = " + f1.get_str() + " is not positive");
      }
      multiplicity(D, n, p.r, p.d);
    } catch (const std::exception& e) {
      return CheckResult::failed(std::string("(r, d) = (") + std::to_string(p.r) + ", " + std::to_string(p.d) +
                                 "): " + e.what());
    }
  }
  return CheckResult::passed();
}

std::vector<int> admissible_diameters(int D) {
  std::vector<int> ds;
  for (const auto& p : admissible_params(D)) {
    bool seen = false;
    for (int d : ds) seen = seen || (d == p.d);
    if (!seen) ds.push_back(p.d);
  }
  return ds;
}

}  // namespace

const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> groups = {"structure", "uniform",  "tridiagonal", "entrywise",
                                                  "spectrum",  "qpoly",    "modules",     "audit"};
  return groups;
}

nlohmann::ordered_json run_suites(const SuiteOptions& opts) {
  std::set<std::string> sel;
  if (opts.suites.empty()) {
    sel.insert(suite_groups().begin(), suite_groups().end());
  } else {
    for (const auto& s : opts.suites) {
      bool known = false;
      for (const auto& g : suite_groups()) known = known || (g == s);
      if (!known) throw std::invalid_argument("unknown suite group: " + s);
      sel.insert(s);
    }
  }
  const auto selected = [&sel](const char* g) { return sel.count(g) != 0; };

  const HammingSpace space = make_space(opts.D, opts.n);
  const RadicandParts parts = normalize_radicand(opts.n - 1);
  const int D = opts.D;
  const int n = opts.n;

  ordered_json report;
  report["schema"] = "qham-report/1";
  report["instance"] = {{"D", D},
                        {"n", n},
                        {"vertices", space.vertex_count},
                        {"radicand", parts.radicand},
                        {"scale", parts.scale}};
  ordered_json suite_list = ordered_json::array();
  for (const auto& g : suite_groups()) {
    if (sel.count(g)) suite_list.push_back(g);
  }
  report["suite"] = std::move(suite_list);

  const bool need_ctx = selected("structure") || selected("uniform") || selected("tridiagonal") ||
                        selected("entrywise") || selected("spectrum") || selected("qpoly") ||
                        selected("modules");
  std::optional<TerwilligerContext> ctx;
  std::string ctx_err;
  if (need_ctx) {
    try {
      ctx = build_context(full_bipartite(space));
    } catch (const std::exception& e) {
      ctx_err = e.what();
    }
  }
  if (ctx) report["instance"]["edges"] = ctx->graph().edge_count;

  Runner runner(opts.timings);
  const std::string ctx_reason = "context construction failed";

  if (selected("structure") || (need_ctx && !ctx_err.empty())) {
    runner.run("structure.context-invariants", no_details([&] {
                 return ctx_err.empty() ? CheckResult::passed() : CheckResult::failed(ctx_err);
               }));
  }
  if (selected("structure")) {
    const auto ctx_check = [&](const std::string& name, auto&& f) {
      if (ctx) {
        runner.run(name, no_details(f));
      } else {
        runner.skip(name, ctx_reason);
      }
    };
    ctx_check("structure.partition-sizes", [&] { return check_partition_sizes(ctx->graph()); });
    ctx_check("structure.intersection-numbers", [&] { return check_intersection_numbers(ctx->graph()); });
    ctx_check("structure.bipartite-connected", [&] { return check_bipartite_connected(ctx->graph()); });
    ctx_check("structure.degree-consistency", [&] { return check_degree_consistency(ctx->graph()); });
    ctx_check("structure.geodesic-distances", [&] { return check_geodesic_distances(ctx->graph()); });
    ctx_check("structure.dual-idempotent-blocks", [&] { return verify_dual_idempotent_blocks(*ctx); });
  }

  if (selected("uniform")) {
    if (ctx) {
      runner.run("uniform.relation", no_details([&] { return verify_uniform(*ctx); }));
    } else {
      runner.skip("uniform.relation", ctx_reason);
    }
  }
  if (selected("tridiagonal")) {
    if (ctx) {
      runner.run("tridiagonal.relation", no_details([&] { return verify_tridiagonal(*ctx); }));
    } else {
      runner.skip("tridiagonal.relation", ctx_reason);
    }
  }
  if (selected("entrywise")) {
    if (ctx) {
      runner.run("entrywise.walk-identity", no_details([&] { return verify_tridiagonal_entrywise(*ctx); }));
      runner.run("entrywise.gamma3", no_details([&] { return check_gamma3(*ctx); }));
    } else {
      runner.skip("entrywise.walk-identity", ctx_reason);
      runner.skip("entrywise.gamma3", ctx_reason);
    }
  }

  const bool need_sd = selected("spectrum") || selected("qpoly");
  std::optional<SpectralData> sd;
  std::string sd_err;
  if (need_sd && ctx) {
    try {
      sd = primitive_idempotents(*ctx);
    } catch (const std::exception& e) {
      sd_err = e.what();
    }
  }
  const std::string sd_reason = ctx ? "idempotent construction failed" : ctx_reason;

  std::optional<SpectrumChecks> sc;
  if (sd && selected("spectrum")) sc = verify_spectrum(*ctx, *sd);

  if (selected("spectrum") || (selected("qpoly") && ctx && !sd_err.empty())) {
    if (!ctx) {
      runner.skip("spectrum.idempotent-construction", ctx_reason);
    } else {
      runner.run("spectrum.idempotent-construction", no_details([&] {
                   if (!sd_err.empty()) return CheckResult::failed(sd_err);
                   return sc ? sc->idempotents_nonzero : CheckResult::passed();
                 }));
    }
  }
  if (selected("spectrum")) {
    const auto sc_check = [&](const std::string& name, auto&& f) {
      if (sc) {
        runner.run(name, no_details(f));
      } else {
        runner.skip(name, sd_reason);
      }
    };
    sc_check("spectrum.eigenvalues-distinct", [&] { return sc->eigenvalues_distinct; });
    sc_check("spectrum.minimal-polynomial", [&] { return sc->minimal_polynomial; });
    sc_check("spectrum.eigen-equation", [&] { return sc->eigen_equation; });
    sc_check("spectrum.resolution-of-identity", [&] { return sc->resolution_of_identity; });
    sc_check("spectrum.idempotent-products", [&] { return sc->idempotent_products; });
    sc_check("spectrum.multiplicities", [&] { return sc->multiplicities; });
    sc_check("spectrum.multiplicity-formula", [&] {
      for (int i = 0; i <= 2 * D; ++i) {
        const Integer formula = eigenvalue_multiplicity_sum(D, n, i);
        if (sd->multiplicities[static_cast<std::size_t>(i)] != formula) {
          return CheckResult::failed("trace(E_" + std::to_string(i) + ") = " +
                                     sd->multiplicities[static_cast<std::size_t>(i)].get_str() +
                                     ", module sum gives " + formula.get_str());
        }
      }
      return CheckResult::passed();
    });
    sc_check("spectrum.float-oracle", [&] { return verify_float_spectrum(*ctx, *sd); });
  }

  if (selected("qpoly")) {
    if (sd) {
      const ZeroBlockReport zb = verify_zero_blocks(*ctx, *sd);
      const OrderingReport ord = verify_orderings(zb, D);
      runner.run("qpoly.zero-blocks", [&](ordered_json& details) {
        ordered_json table = ordered_json::array();
        for (const auto& row : zb.block_nonzero) {
          ordered_json r = ordered_json::array();
          for (bool b : row) r.push_back(b ? 1 : 0);
          table.push_back(std::move(r));
        }
        details["block_nonzero"] = std::move(table);
        return zb.forbidden_blocks;
      });
      runner.run("qpoly.scalar-factor", no_details([&] { return zb.scalar_factor; }));
      runner.run("qpoly.ordering-even-first", [&](ordered_json& details) {
        details["order"] = ord.even_first;
        return ord.even_first_tridiagonal;
      });
      runner.run("qpoly.ordering-odd-first", [&](ordered_json& details) {
        details["order"] = ord.odd_first;
        return ord.odd_first_tridiagonal;
      });
      runner.run("qpoly.ordering-natural-control", [&](ordered_json& details) {
        details["violation"] = ord.natural_witness;
        return ord.natural_order_control;
      });
    } else {
      for (const char* name : {"qpoly.zero-blocks", "qpoly.scalar-factor", "qpoly.ordering-even-first",
                               "qpoly.ordering-odd-first", "qpoly.ordering-natural-control"}) {
        runner.skip(name, sd_reason);
      }
    }
    if (ctx) {
      runner.run("qpoly.dual-generation", no_details([&] { return verify_dual_generation(*ctx); }));
    } else {
      runner.skip("qpoly.dual-generation", ctx_reason);
    }
  }

  if (selected("modules")) {
    if (ctx) {
      runner.run("modules.primary-seed", [&](ordered_json& details) {
        return check_module_report(generate_submodule(*ctx, seed_primary(*ctx)), 0, D,
                                   static_cast<std::size_t>(D) + 1, details);
      });
      runner.run("modules.endpoint-one-seed", [&](ordered_json& details) {
        return check_module_report(generate_submodule(*ctx, seed_e1_diff(*ctx)), 1, D - 1,
                                   static_cast<std::size_t>(D), details);
      });
    } else {
      runner.skip("modules.primary-seed", ctx_reason);
      runner.skip("modules.endpoint-one-seed", ctx_reason);
    }
  }

  if (selected("audit")) {
    runner.run("audit.admissible-params", no_details([&] { return check_admissible_params(D); }));
    runner.run("audit.multiplicity-forms", no_details([&] { return check_multiplicity_forms(D, n); }));
    runner.run("audit.dimension-audit", [&](ordered_json& details) {
      const DimensionAudit audit = dimension_audit(D, n);
      details["total"] = audit.total.get_str();
      details["expected"] = audit.expected.get_str();
      if (!audit.ok) {
        return CheckResult::failed("module dimensions sum to " + audit.total.get_str() + ", expected " +
                                   audit.expected.get_str());
      }
      return CheckResult::passed();
    });
    runner.run("audit.krawtchouk-consistency", no_details([&] {
                 for (int d : admissible_diameters(D)) {
                   try {
                     char_poly_krawtchouk(d, n);
                   } catch (const std::exception& e) {
                     return CheckResult::failed("d = " + std::to_string(d) + ": " + e.what());
                   }
                 }
                 return CheckResult::passed();
               }));
    runner.run("audit.rep-matrix-spectrum", no_details([&] {
                 for (int d : admissible_diameters(D)) {
                   const CheckResult r = rep_matrix_spectrum_check(d, n);
                   if (!r.pass) return CheckResult::failed("d = " + std::to_string(d) + ": " + r.witness);
                 }
                 return CheckResult::passed();
               }));
    runner.run("audit.eigenvalue-multiplicity-sum", no_details([&] {
                 Integer total(0);
                 for (int i = 0; i <= 2 * D; ++i) {
                   const Integer mi = eigenvalue_multiplicity_sum(D, n, i);
                   if (mi < 1) {
                     return CheckResult::failed("eigenvalue " + std::to_string(i) + " has multiplicity sum " +
                                                mi.get_str());
                   }
                   total += mi;
                 }
                 Integer expected(1);
                 for (int k = 0; k < D; ++k) expected *= n;
                 if (total != expected) {
                   return CheckResult::failed("multiplicity sums total " + total.get_str() + ", expected " +
                                              expected.get_str());
                 }
                 return CheckResult::passed();
               }));
  }

  report["checks"] = runner.checks();

  if (selected("spectrum") && sd) {
    ordered_json spec;
    spec["note"] = "eigenvalue index range: i = 0..2D (2D+1 distinct eigenvalues)";
    spec["form"] = "theta_i = coefficient * sqrt(radicand)";
    ordered_json evs = ordered_json::array();
    for (int i = 0; i <= 2 * D; ++i) {
      ordered_json e;
      e["index"] = i;
      e["coefficient"] = sd->eigen_coeff[static_cast<std::size_t>(i)];
      e["radicand"] = sd->radicand;
      e["value"] = sd->eigenvalues[static_cast<std::size_t>(i)].to_string();
      e["multiplicity"] = sd->multiplicities[static_cast<std::size_t>(i)].get_str();
      evs.push_back(std::move(e));
    }
    spec["eigenvalues"] = std::move(evs);
    report["spectrum"] = std::move(spec);
  }

  if (selected("audit")) {
    const DimensionAudit audit = dimension_audit(D, n);
    ordered_json mods;
    mods["note"] = "multiplicity sums range over admissible (r, d) pairs only";
    ordered_json rows = ordered_json::array();
    for (const auto& row : audit.rows) {
      ordered_json r;
      r["r"] = row.r;
      r["d"] = row.d;
      r["multiplicity"] = row.mult.get_str();
      r["dimension"] = row.dim;
      rows.push_back(std::move(r));
    }
    mods["module_types"] = std::move(rows);
    mods["total"] = audit.total.get_str();
    mods["expected"] = audit.expected.get_str();
    report["modules"] = std::move(mods);
  }

  report["verdict"] = runner.all_pass() ? "pass" : "fail";
  return report;
}

bool report_passes(const nlohmann::ordered_json& report) {
  if (!report.contains("checks")) return false;
  for (const auto& c : report["checks"]) {
    if (c.at("verdict") == "fail") return false;
  }
  return true;
}

std::string render_report(const nlohmann::ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace qham
