#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <random>

#include "qham/qnum.hpp"

using namespace qham;

namespace {

// Independent oracle: largest s with s^2 | k found by downward scan, then a
// divisor scan certifying k/s^2 squarefree.
RadicandParts slow_normalize(std::int64_t k) {
  std::int64_t best = 1;
  for (std::int64_t s = 1; s * s <= k; ++s)
    if (k % (s * s) == 0) best = s;
  std::int64_t m = k / (best * best);
  for (std::int64_t p = 2; p * p <= m; ++p) REQUIRE(m % (p * p) != 0);
  return {best, m};
}

QuadScalar rand_scalar(std::mt19937_64& rng, std::int64_t m) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  return QuadScalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), m);
}

bool close(double x, double y) { return std::abs(x - y) <= 1e-9 * (1.0 + std::abs(x) + std::abs(y)); }

}  // namespace

TEST_CASE("normalize_radicand matches the scan oracle and frozen values") {
  CHECK(normalize_radicand(1).scale == 1);
  CHECK(normalize_radicand(1).radicand == 1);
  CHECK(normalize_radicand(12).scale == 2);
  CHECK(normalize_radicand(12).radicand == 3);
  CHECK(normalize_radicand(18).scale == 3);
  CHECK(normalize_radicand(18).radicand == 2);
  CHECK(normalize_radicand(49).scale == 7);
  CHECK(normalize_radicand(49).radicand == 1);
  CHECK(normalize_radicand(360).scale == 6);
  CHECK(normalize_radicand(360).radicand == 10);
  for (std::int64_t k = 1; k <= 2000; ++k) {
    auto fast = normalize_radicand(k);
    auto slow = slow_normalize(k);
    CHECK(fast.scale == slow.scale);
    CHECK(fast.radicand == slow.radicand);
    CHECK(fast.scale * fast.scale * fast.radicand == k);
  }
  CHECK_THROWS_AS(normalize_radicand(0), InvalidOperandError);
  CHECK_THROWS_AS(normalize_radicand(-4), InvalidOperandError);
}

TEST_CASE("QuadScalar construction and normalization") {
  QuadScalar z;
  CHECK(z.is_zero());
  CHECK(z.is_rational());
  CHECK(z.radicand() == 1);

  QuadScalar s2 = QuadScalar::sqrt_of(2);
  CHECK(s2.radicand() == 2);
  CHECK(s2.radical_part() == 1);
  CHECK(close(s2.to_double(), std::sqrt(2.0)));

  QuadScalar s8 = QuadScalar::sqrt_of(8);
  CHECK(s8.radicand() == 2);
  CHECK(s8.radical_part() == 2);

  QuadScalar s9 = QuadScalar::sqrt_of(9);
  CHECK(s9.is_rational());
  CHECK(s9.rational_part() == 3);
  CHECK(s9.radicand() == 1);

  // m = 1 folds b into a
  QuadScalar folded(Rational(1), Rational(5), 1);
  CHECK(folded.is_rational());
  CHECK(folded.rational_part() == 6);

  CHECK_THROWS_AS(QuadScalar(Rational(1), Rational(1), 12), InvalidOperandError);
  CHECK_THROWS_AS(QuadScalar(Rational(1), Rational(1), 0), InvalidOperandError);
}

TEST_CASE("field axioms on random triples with numeric shadow") {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (int iter = 0; iter < 1000; ++iter) {
    std::int64_t m = (iter % 3 == 0) ? 1 : (iter % 3 == 1 ? 2 : 5);
    QuadScalar x = rand_scalar(rng, m);
    QuadScalar y = rand_scalar(rng, m);
    QuadScalar w = rand_scalar(rng, m);

    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + w == x + (y + w));
    CHECK((x * y) * w == x * (y * w));
    CHECK(x * (y + w) == x * y + x * w);
    CHECK(x - x == QuadScalar());
    CHECK(x + QuadScalar() == x);
    CHECK(x * QuadScalar(1) == x);

    if (!x.is_zero()) {
      CHECK(x * x.inverse() == QuadScalar(1));
      CHECK((y / x) * x == y);
    }

    CHECK(close((x + y).to_double(), x.to_double() + y.to_double()));
    CHECK(close((x * y).to_double(), x.to_double() * y.to_double()));
    CHECK(close((x - y).to_double(), x.to_double() - y.to_double()));
  }
}

TEST_CASE("radicand mixing rules") {
  QuadScalar s2 = QuadScalar::sqrt_of(2);
  QuadScalar s3 = QuadScalar::sqrt_of(3);
  QuadScalar r(Rational(7, 2));

  CHECK((s2 + r).radicand() == 2);
  CHECK((r + s3).radicand() == 3);
  CHECK_THROWS_AS(s2 + s3, RadicandMismatchError);
  CHECK_THROWS_AS(s2 * s3, RadicandMismatchError);

  // a zero-radical scalar tagged with some m is compatible with any field
  QuadScalar tagged(Rational(4), Rational(0), 5);
  CHECK(tagged + s2 == QuadScalar(Rational(4), Rational(1), 2));

  CHECK_THROWS_AS(r / QuadScalar(), InvalidOperandError);
  CHECK_THROWS_AS(QuadScalar().inverse(), InvalidOperandError);
}

TEST_CASE("sqrt(2) arithmetic identities") {
  QuadScalar s2 = QuadScalar::sqrt_of(2);
  CHECK(s2 * s2 == QuadScalar(2));
  CHECK((s2 + QuadScalar(1)) * (s2 - QuadScalar(1)) == QuadScalar(1));
  QuadScalar inv = s2.inverse();
  CHECK(inv == QuadScalar(Rational(0), Rational(1, 2), 2));
  CHECK(inv * s2 == QuadScalar(1));
}

TEST_CASE("rendering and parsing round-trip") {
  QuadScalar v(Rational(3, 2), Rational(-1), 2);
  CHECK(v.to_string() == "3/2 + -1*sqrt(2)");
  CHECK(QuadScalar::parse(v.to_string()) == v);

  CHECK(QuadScalar(5).to_string() == "5 + 0*sqrt(1)");
  CHECK(QuadScalar::parse("5 + 0*sqrt(1)") == QuadScalar(5));
  CHECK(QuadScalar::parse("5") == QuadScalar(5));
  CHECK(QuadScalar::parse("-1/2") == QuadScalar(Rational(-1, 2)));
  CHECK(QuadScalar::parse("3*sqrt(2)") == QuadScalar(Rational(0), Rational(3), 2));
  CHECK(QuadScalar::parse("sqrt(2)") == QuadScalar::sqrt_of(2));
  CHECK(QuadScalar::parse("2*sqrt(8)") == QuadScalar(Rational(0), Rational(4), 2));
  CHECK(QuadScalar::parse("sqrt(4)") == QuadScalar(2));
  CHECK(QuadScalar::parse("1 - sqrt(2)") == QuadScalar(Rational(1), Rational(-1), 2));
  CHECK(QuadScalar::parse(" -2 + 3*sqrt(5) ") == QuadScalar(Rational(-2), Rational(3), 5));

  std::mt19937_64 rng(1234567);
  for (int iter = 0; iter < 200; ++iter) {
    QuadScalar x = rand_scalar(rng, iter % 2 ? 3 : 1);
    CHECK(QuadScalar::parse(x.to_string()) == x);
  }

  CHECK_THROWS_AS(QuadScalar::parse(""), ParseError);
  CHECK_THROWS_AS(QuadScalar::parse("1 + sqrt(2) + sqrt(3)"), ParseError);
  CHECK_THROWS_AS(QuadScalar::parse("sqrt(-2)"), ParseError);
  CHECK_THROWS_AS(QuadScalar::parse("1 +"), ParseError);
  CHECK_THROWS_AS(QuadScalar::parse("banana"), ParseError);
  CHECK_THROWS_AS(QuadScalar::parse("1/0"), ParseError);
}

TEST_CASE("polynomial arithmetic basics") {
  // p = t^2 - 2, q = t + 1
  QuadPolynomial p({QuadScalar(-2), QuadScalar(0), QuadScalar(1)});
  QuadPolynomial q({QuadScalar(1), QuadScalar(1)});
  CHECK(p.degree() == 2);
  CHECK(q.degree() == 1);

  QuadPolynomial prod = p * q;
  CHECK(prod.degree() == 3);
  CHECK(prod == QuadPolynomial({QuadScalar(-2), QuadScalar(-2), QuadScalar(1), QuadScalar(1)}));

  QuadPolynomial sum = p + q;
  CHECK(sum == QuadPolynomial({QuadScalar(-1), QuadScalar(1), QuadScalar(1)}));

  QuadPolynomial diff = p - p;
  CHECK(diff.is_zero());
  CHECK(diff.degree() == -1);

  CHECK(p.eval(QuadScalar::sqrt_of(2)).is_zero());
  CHECK(p.eval(QuadScalar(3)) == QuadScalar(7));

  // leading coefficient stays nonzero after cancelling ops
  QuadPolynomial cancel = QuadPolynomial({QuadScalar(1), QuadScalar(2)}) -
                          QuadPolynomial({QuadScalar(0), QuadScalar(2)});
  CHECK(cancel.degree() == 0);
  CHECK(cancel.leading_coefficient() == QuadScalar(1));
}

TEST_CASE("frozen recurrence polynomials for small parameters") {
  // Three-term recurrence f_{i+1} = t f_i - i(n-1)(d-i+1) f_{i-1}, f_0 = 1, f_1 = t.
  auto recurrence = [](int d, int n, int upto) {
    std::vector<QuadPolynomial> f;
    f.push_back(QuadPolynomial::constant(QuadScalar(1)));
    f.push_back(QuadPolynomial::monomial(QuadScalar(1), 1));
    for (int i = 1; i < upto; ++i) {
      QuadPolynomial next = QuadPolynomial::monomial(QuadScalar(1), 1) * f[i];
      next -= f[i - 1] * QuadScalar(static_cast<long>(i) * (n - 1) * (d - i + 1));
      f.push_back(next);
    }
    return f;
  };

  // d = 1, n = 3: f_2 = t^2 - 2
  auto f1 = recurrence(1, 3, 2);
  CHECK(f1[2] == QuadPolynomial({QuadScalar(-2), QuadScalar(0), QuadScalar(1)}));
  CHECK(f1[2].eval(QuadScalar::sqrt_of(2)).is_zero());

  // d = 2, n = 3: f_2 = t^2 - 4, f_3 = t^3 - 8t
  auto f2 = recurrence(2, 3, 3);
  CHECK(f2[2] == QuadPolynomial({QuadScalar(-4), QuadScalar(0), QuadScalar(1)}));
  CHECK(f2[3] == QuadPolynomial({QuadScalar(0), QuadScalar(-8), QuadScalar(0), QuadScalar(1)}));
  CHECK(f2[3].eval(QuadScalar(0)).is_zero());
  // roots are sqrt(n-1)*(d-2j) = {2*sqrt(2), 0, -2*sqrt(2)}
  QuadScalar root = QuadScalar(2) * QuadScalar::sqrt_of(2);
  CHECK(f2[3].eval(root).is_zero());
  CHECK(f2[3].eval(-root).is_zero());
}

TEST_CASE("shift_scale substitutes alpha*t + beta") {
  QuadPolynomial p({QuadScalar(-2), QuadScalar(0), QuadScalar(1)});  // t^2 - 2
  QuadScalar two(2), one(1);
  QuadPolynomial q = p.shift_scale(two, one);  // (2t+1)^2 - 2 = 4t^2 + 4t - 1
  CHECK(q == QuadPolynomial({QuadScalar(-1), QuadScalar(4), QuadScalar(4)}));

  CHECK_THROWS_AS(p.shift_scale(QuadScalar(0), one), InvalidOperandError);

  // inverse substitution recovers the original
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<QuadScalar> cs;
    int deg = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i <= deg; ++i) cs.push_back(rand_scalar(rng, 2));
    QuadPolynomial base(cs);
    QuadScalar alpha = rand_scalar(rng, 2);
    if (alpha.is_zero()) alpha = QuadScalar(1);
    QuadScalar beta = rand_scalar(rng, 2);
    QuadPolynomial moved = base.shift_scale(alpha, beta);
    QuadPolynomial back = moved.shift_scale(alpha.inverse(), -(beta / alpha));
    CHECK(back == base);

    // numeric shadow of the substitution at a sample point
    QuadScalar t(Rational(3, 7));
    double lhs = moved.eval(t).to_double();
    double rhs = base.eval(alpha * t + beta).to_double();
    CHECK(close(lhs, rhs));
  }
}

TEST_CASE("degree bookkeeping under products") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 100; ++iter) {
    int dp = static_cast<int>(rng() % 4);
    int dq = static_cast<int>(rng() % 4);
    std::vector<QuadScalar> cp, cq;
    for (int i = 0; i <= dp; ++i) cp.push_back(rand_scalar(rng, 3));
    for (int i = 0; i <= dq; ++i) cq.push_back(rand_scalar(rng, 3));
    if (cp.back().is_zero()) cp.back() = QuadScalar(1);
    if (cq.back().is_zero()) cq.back() = QuadScalar(1);
    QuadPolynomial p(cp), q(cq);
    CHECK((p * q).degree() == p.degree() + q.degree());
  }
}
