#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "qham/hamming.hpp"
#include "qham/matrix.hpp"
#include "qham/qnum.hpp"
#include "qham/terwilliger.hpp"

using namespace qham;

namespace {

TerwilligerContext ctx_of(int D, int n) { return build_context(full_bipartite(make_space(D, n))); }

}  // namespace

TEST_CASE("star instance (1,3): matrices by hand") {
  const TerwilligerContext ctx = ctx_of(1, 3);
  CHECK(ctx.order() == 3);
  CHECK(ctx.scale() == 1);
  CHECK(ctx.radicand() == 2);

  // L moves weight 1 -> 0: exactly two unit entries in row 0
  std::size_t nonzeros = 0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (!ctx.L().at(r, c).is_zero()) {
        ++nonzeros;
        CHECK(r == 0);
        CHECK(ctx.L().at(r, c) == QuadScalar(Rational(1), Rational(0), 1));
      }
  CHECK(nonzeros == 2);
  CHECK(ctx.R() == ctx.L().transpose());
  CHECK(ctx.A() == ctx.L() + ctx.R());

  // with L^2 = 0 the uniform relation collapses to LRL = 2L
  const ExactMatrix LRL = ctx.L() * ctx.R() * ctx.L();
  CHECK(LRL == ctx.L().scaled(QuadScalar(Rational(2), Rational(0), 1)));
  CHECK((ctx.L() * ctx.L()).is_zero());
}

TEST_CASE("dual adjacency diagonal frozen at (2,3)") {
  const TerwilligerContext ctx = ctx_of(2, 3);
  CHECK(ctx.theta_star(0) == 4);
  CHECK(ctx.theta_star(1) == 1);
  CHECK(ctx.theta_star(2) == -2);
  std::size_t at4 = 0, at1 = 0, atm2 = 0;
  for (std::size_t v = 0; v < ctx.order(); ++v) {
    const QuadScalar d = ctx.Astar().at(v);
    if (d == QuadScalar(Rational(4), Rational(0), 1)) ++at4;
    if (d == QuadScalar(Rational(1), Rational(0), 1)) ++at1;
    if (d == QuadScalar(Rational(-2), Rational(0), 1)) ++atm2;
  }
  CHECK(at4 == 1);
  CHECK(at1 == 4);
  CHECK(atm2 == 4);
}

TEST_CASE("dual idempotents cut the identity by weight class") {
  const TerwilligerContext ctx = ctx_of(2, 4);
  std::vector<QuadScalar> sum(ctx.order());
  for (int i = 0; i <= ctx.D(); ++i) {
    const DiagMatrix& e = ctx.dual_idempotent(i);
    for (std::size_t v = 0; v < ctx.order(); ++v) {
      const bool in_class = ctx.graph().weight[v] == i;
      CHECK(e.at(v) == QuadScalar(Rational(in_class ? 1 : 0), Rational(0), 1));
      sum[v] = sum[v] + e.at(v);
    }
  }
  for (const auto& s : sum) CHECK(s == QuadScalar(Rational(1), Rational(0), 1));
}

TEST_CASE("A equals L + R with R the transpose, on several instances") {
  for (auto [D, nn] : {std::pair{1, 4}, std::pair{2, 3}, std::pair{3, 3}}) {
    const TerwilligerContext ctx = ctx_of(D, nn);
    CHECK(ctx.A() == ctx.L() + ctx.R());
    CHECK(ctx.R() == ctx.L().transpose());
    CHECK(ctx.A().is_symmetric());
    CHECK(ctx.A_int() == ctx.L_int() + ctx.R_int());
    // scalar matrices mirror the integer ones
    for (std::size_t r = 0; r < ctx.order(); ++r)
      for (std::size_t c = 0; c < ctx.order(); ++c)
        CHECK(ctx.A().at(r, c) ==
              QuadScalar(Rational(static_cast<long>(ctx.A_int().at(r, c))), Rational(0), 1));
  }
}

TEST_CASE("dual idempotent blocks of A are superdiagonal/subdiagonal only") {
  for (auto [D, nn] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 5}}) {
    const auto r = verify_dual_idempotent_blocks(ctx_of(D, nn));
    CHECK(r.pass);
    CHECK(r.witness.empty());
  }
}

TEST_CASE("uniform relation holds on the small grid") {
  for (auto [D, nn] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    const auto r = verify_uniform(ctx_of(D, nn));
    CHECK(r.pass);
  }
}

TEST_CASE("tridiagonal relation holds, matrix and entrywise routes") {
  for (auto [D, nn] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    const TerwilligerContext ctx = ctx_of(D, nn);
    CHECK(verify_tridiagonal(ctx).pass);
    CHECK(verify_tridiagonal_entrywise(ctx).pass);
  }
}

TEST_CASE("a doctored scalar breaks the uniform relation") {
  // same graph, wrong field constant: the relation must NOT hold with 2(n-1)
  const TerwilligerContext ctx = ctx_of(2, 3);
  const QuadScalar half(Rational(1, 2), Rational(0), 1);
  ExactMatrix lhs = ctx.L() * ctx.R() * ctx.L();
  lhs.add_scaled(ctx.R() * ctx.L() * ctx.L(), QuadScalar(Rational(-1, 2), Rational(0), 1));
  lhs.add_scaled(ctx.L() * ctx.L() * ctx.R(), QuadScalar(Rational(-1, 2), Rational(0), 1));
  CHECK(lhs == ctx.L().scaled(QuadScalar(Rational(2), Rational(0), 1)));
  CHECK(!(lhs == ctx.L().scaled(QuadScalar(Rational(4), Rational(0), 1))));
  (void)half;
}

TEST_CASE("walk counts: matrix route equals enumeration route") {
  const TerwilligerContext ctx = ctx_of(2, 3);
  CHECK(verify_walk_counts(ctx, 4).pass);
  // spot shapes on a slightly bigger instance
  const TerwilligerContext big = ctx_of(3, 3);
  for (const char* shape : {"l", "r", "lr", "rl", "llr", "rrl", "lrl"}) {
    CHECK(shape_count_matrix(big, shape) == shape_count_matrix_enumerated(big, shape));
  }
}

TEST_CASE("flat steps contribute no walks") {
  const TerwilligerContext ctx = ctx_of(2, 4);
  CHECK(shape_count_matrix(ctx, "f").is_zero());
  CHECK(shape_count_matrix(ctx, "lfr").is_zero());
  CHECK(shape_count_matrix_enumerated(ctx, "f").is_zero());
}

TEST_CASE("shape_walk_count frozen values on the star") {
  const TerwilligerContext ctx = ctx_of(1, 3);
  // vertex 0 is the centre; 1 and 2 are the leaves
  CHECK(shape_walk_count(ctx, "l", 1, 0) == 1);
  CHECK(shape_walk_count(ctx, "r", 0, 1) == 1);
  CHECK(shape_walk_count(ctx, "lr", 1, 1) == 1);
  CHECK(shape_walk_count(ctx, "lr", 1, 2) == 1);
  CHECK(shape_walk_count(ctx, "rl", 0, 0) == 2);
  CHECK(shape_walk_count(ctx, "l", 0, 1) == 0);
}

TEST_CASE("theta_star values are D(n-1) - n i") {
  const TerwilligerContext ctx = ctx_of(3, 5);
  for (int i = 0; i <= 3; ++i) CHECK(ctx.theta_star(i) == 12 - 5 * i);
  // formula stays linear outside the weight range
  CHECK(ctx.theta_star(4) == -8);
  CHECK(ctx.sqrt_n_minus_1() == QuadScalar(Rational(0), Rational(2), 1));
  CHECK(ctx.scale() == 2);
  CHECK(ctx.radicand() == 1);
}
