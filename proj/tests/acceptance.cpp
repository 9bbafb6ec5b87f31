// Acceptance gate: one line per criterion, exit 0 only if every line passes.
#include <chrono>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "qham/hamming.hpp"
#include "qham/matrix.hpp"
#include "qham/numeric_oracle.hpp"
#include "qham/qnum.hpp"
#include "qham/spectral.hpp"
#include "qham/terwilliger.hpp"
#include "qham/tmodules.hpp"

using namespace qham;

namespace {

struct Tally {
  bool pass = true;
  std::string witness;

  void fail(std::string w) {
    if (pass) {
      pass = false;
      witness = std::move(w);
    }
  }
  void take(const CheckResult& r, const std::string& where) {
    if (!r.pass) fail(where + ": " + r.witness);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

std::string tag(int D, int n) { return "(D=" + std::to_string(D) + ", n=" + std::to_string(n) + ")"; }

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();

  Tally uniform, tridiag, spectrum, mults, kraw, qpoly, modules, audit, walks;

  for (int D = 1; D <= 4; ++D) {
    for (int n = 3; n <= 5; ++n) {
      const std::string at = tag(D, n);
      TerwilligerContext ctx = [&] {
        try {
          return build_context(full_bipartite(make_space(D, n)));
        } catch (const std::exception& e) {
          const std::string why = at + ": context construction: " + e.what();
          uniform.fail(why);
          tridiag.fail(why);
          spectrum.fail(why);
          mults.fail(why);
          qpoly.fail(why);
          modules.fail(why);
          walks.fail(why);
          throw;
        }
      }();
      const std::size_t order = ctx.order();

      // 1: uniform relation
      uniform.take(verify_uniform(ctx), at);

      // 2: tridiagonal relation, both routes
      tridiag.take(verify_tridiagonal(ctx), at + " matrix route");
      if (order <= 128) tridiag.take(verify_tridiagonal_entrywise(ctx), at + " entrywise route");

      // 3 + 4 + 6: spectral pipeline
      try {
        const SpectralData sd = primitive_idempotents(ctx);
        const SpectrumChecks sc = verify_spectrum(ctx, sd);
        spectrum.take(sc.eigenvalues_distinct, at + " distinctness");
        spectrum.take(sc.idempotents_nonzero, at + " nonzero idempotents");
        spectrum.take(sc.eigen_equation, at + " eigen equation");
        spectrum.take(sc.resolution_of_identity, at + " resolution of identity");
        spectrum.take(sc.minimal_polynomial, at + " minimal polynomial");
        spectrum.take(sc.idempotent_products, at + " idempotent products");
        spectrum.take(verify_float_spectrum(ctx, sd), at + " floating oracle");

        mults.take(sc.multiplicities, at);
        for (int i = 0; i <= 2 * D; ++i) {
          if (sd.multiplicities[static_cast<std::size_t>(i)] != eigenvalue_multiplicity_sum(D, n, i)) {
            mults.fail(at + ": trace(E_" + std::to_string(i) + ") differs from the module-count sum");
            break;
          }
        }
        if (D == 2 && n == 3) {
          const std::vector<Integer> expect = {Integer(1), Integer(2), Integer(3), Integer(2), Integer(1)};
          mults.expect(sd.multiplicities == expect, "(D=2, n=3) spot multiplicities are not (1,2,3,2,1)");
        }

        const ZeroBlockReport zb = verify_zero_blocks(ctx, sd);
        qpoly.take(zb.forbidden_blocks, at + " forbidden blocks");
        qpoly.take(zb.scalar_factor, at + " scalar factor");
        const OrderingReport ord = verify_orderings(zb, D);
        qpoly.take(ord.even_first_tridiagonal, at + " even-first ordering");
        qpoly.take(ord.odd_first_tridiagonal, at + " odd-first ordering");
        qpoly.take(ord.natural_order_control, at + " natural-order control");
      } catch (const std::exception& e) {
        const std::string why = at + ": " + e.what();
        spectrum.fail(why);
        mults.fail(why);
        qpoly.fail(why);
      }

      // 7: primary module closure
      if (order <= 128) {
        try {
          const SubmoduleReport rep = generate_submodule(ctx, seed_primary(ctx));
          modules.expect(rep.endpoint == 0, at + ": endpoint " + std::to_string(rep.endpoint));
          modules.expect(rep.diameter == D, at + ": diameter " + std::to_string(rep.diameter));
          modules.expect(rep.thin, at + ": closure is not thin");
          modules.expect(rep.dimension == static_cast<std::size_t>(D) + 1,
                         at + ": dimension " + std::to_string(rep.dimension));
          modules.expect(rep.basis_attempted, at + ": ladder basis not attempted");
          modules.take(rep.basis, at + " ladder action");
          bool xs = rep.raising_coefficients.size() == static_cast<std::size_t>(D);
          for (int i = 0; xs && i < D; ++i)
            xs = rep.raising_coefficients[static_cast<std::size_t>(i)] == raising_coefficient(n, D, i);
          modules.expect(xs, at + ": raising coefficients differ from (i+1)(n-1)(d-i)");
        } catch (const std::exception& e) {
          modules.fail(at + ": " + e.what());
        }
      }

      // 9: shaped walk counts, both routes
      if (order <= 81) walks.take(verify_walk_counts(ctx, 4), at);
    }
  }

  // 5: Krawtchouk routes and exact roots
  for (int d = 0; d <= 8 && kraw.pass; ++d) {
    for (int n = 3; n <= 6 && kraw.pass; ++n) {
      try {
        const QuadPolynomial f = char_poly_krawtchouk(d, n);
        const QuadScalar unit = QuadScalar::sqrt_of(n - 1);
        for (int j = 0; j <= d; ++j) {
          const QuadScalar root = unit * QuadScalar(Rational(d - 2 * j), Rational(0), unit.radicand());
          if (!f.eval(root).is_zero()) {
            kraw.fail("d=" + std::to_string(d) + ", n=" + std::to_string(n) + ": f_{d+1} does not vanish at j=" +
                      std::to_string(j));
          }
        }
        kraw.take(rep_matrix_spectrum_check(d, n), "d=" + std::to_string(d) + ", n=" + std::to_string(n));
      } catch (const std::exception& e) {
        kraw.fail("d=" + std::to_string(d) + ", n=" + std::to_string(n) + ": " + e.what());
      }
    }
  }

  // 8: dimension audit over the combinatorial rectangle
  for (int D = 1; D <= 6 && audit.pass; ++D) {
    for (int n = 3; n <= 8 && audit.pass; ++n) {
      try {
        const DimensionAudit a = dimension_audit(D, n);
        audit.expect(a.ok, tag(D, n) + ": totals " + a.total.get_str() + " vs " + a.expected.get_str());
        for (const auto& p : admissible_params(D)) {
          if (multiplicity_form1(D, n, p.r, p.d) != multiplicity_form2(D, n, p.r, p.d)) {
            audit.fail(tag(D, n) + ": closed forms disagree at (r=" + std::to_string(p.r) +
                       ", d=" + std::to_string(p.d) + ")");
            break;
          }
        }
      } catch (const std::exception& e) {
        audit.fail(tag(D, n) + ": " + e.what());
      }
    }
  }

  const std::vector<std::pair<std::string, const Tally*>> lines = {
      {"uniform relation -RLL/2 + LRL - LLR/2 = (n-1)L on the full grid", &uniform},
      {"tridiagonal relation, matrix route and entrywise walk route", &tridiag},
      {"exact spectral decomposition with floating-point oracle", &spectrum},
      {"eigenvalue multiplicities: traces match the module-count sums", &mults},
      {"Krawtchouk characteristic polynomials: three routes, exact roots", &kraw},
      {"dual-adjacency block structure and tridiagonal orderings", &qpoly},
      {"primary module closure: thin, endpoint 0, exact ladder action", &modules},
      {"dimension audit fills n^D for D <= 6, n <= 8", &audit},
      {"shaped walk counts: matrix route equals enumeration", &walks},
  };

  int failures = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [label, tally] = lines[i];
    if (tally->pass) {
      std::printf("PASS criterion %zu: %s\n", i + 1, label.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %zu: %s -- %s\n", i + 1, label.c_str(), tally->witness.c_str());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(lines.size()) - failures,
              lines.size(), secs);
  return failures == 0 ? 0 : 1;
}
