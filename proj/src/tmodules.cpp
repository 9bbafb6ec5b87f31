#include "qham/tmodules.hpp"

#include <string>

#include "qham/hamming.hpp"

namespace qham {

bool params_admissible(int D, int r, int d) {
  return 0 <= r && r + d <= D && D <= 2 * r + d && d >= 0;
}

std::vector<ModuleParams> admissible_params(int D) {
  std::vector<ModuleParams> out;
  for (int d = D; d >= 0; --d)
    for (int r = 0; r <= D; ++r)
      if (params_admissible(D, r, d)) out.push_back({r, d});
  return out;
}

namespace {

Integer falling_factorial(long a, long k) {
  Integer r = 1;
  for (long i = 0; i < k; ++i) r *= a - i;
  return r;
}

Integer factorial(long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Integer mpz_binomial(long a, long b) {
  if (b < 0 || b > a) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

Integer mpz_power(long base, long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

void require_admissible(int D, int r, int d, const char* who) {
  if (!params_admissible(D, r, d))
    throw InvalidOperandError(std::string(who) + ": (r, d) = (" + std::to_string(r) + ", " +
                              std::to_string(d) + ") is not admissible for D = " + std::to_string(D));
}

Integer exact_quotient(const Integer& num, const Integer& den, const char* who) {
  if (sgn(den) == 0) throw InvalidOperandError(std::string(who) + ": zero denominator");
  Integer q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (sgn(rem) != 0)
    throw VerificationError(who, "quotient " + num.get_str() + " / " + den.get_str() +
                                     " is not an integer");
  return q;
}

}  // namespace

Integer multiplicity_form1(int D, int n, int r, int d) {
  require_admissible(D, r, d, "multiplicity_form1");
  Integer num = falling_factorial(D + 1, r) * mpz_power(n - 2, 2 * r + d - D) * (d + 1);
  Integer den = factorial(D - r - d) * factorial(2 * r + d - D) * (D + 1);
  return exact_quotient(num, den, "multiplicity form 1");
}

Integer multiplicity_form2(int D, int n, int r, int d) {
  require_admissible(D, r, d, "multiplicity_form2");
  Integer num = Integer(d + 1) * mpz_binomial(D, 2 * D - 2 * r - d) *
                mpz_binomial(2 * D - 2 * r - d, D - r - d) * mpz_power(n - 2, 2 * r + d - D);
  return exact_quotient(num, Integer(D - r + 1), "multiplicity form 2");
}

Integer multiplicity(int D, int n, int r, int d) {
  Integer m1 = multiplicity_form1(D, n, r, d);
  Integer m2 = multiplicity_form2(D, n, r, d);
  if (m1 != m2)
    throw VerificationError("multiplicity forms disagree",
                            "(r, d) = (" + std::to_string(r) + ", " + std::to_string(d) +
                                "), D = " + std::to_string(D) + ", n = " + std::to_string(n) +
                                ": " + m1.get_str() + " vs " + m2.get_str());
  if (sgn(m1) <= 0)
    throw VerificationError("multiplicity not positive",
                            "(r, d) = (" + std::to_string(r) + ", " + std::to_string(d) + "): " +
                                m1.get_str());
  return m1;
}

DimensionAudit dimension_audit(int D, int n) {
  DimensionAudit audit;
  audit.total = 0;
  for (auto [r, d] : admissible_params(D)) {
    AuditRow row;
    row.r = r;
    row.d = d;
    row.mult = multiplicity(D, n, r, d);
    row.dim = d + 1;
    audit.total += row.mult * row.dim;
    audit.rows.push_back(std::move(row));
  }
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(D));
  audit.expected = expected;
  audit.ok = (audit.total == expected);
  return audit;
}

std::vector<QuadPolynomial> char_poly_recurrence(int d, int n, int upto) {
  if (upto < 0) throw InvalidOperandError("char_poly_recurrence: negative bound");
  std::vector<QuadPolynomial> f;
  f.push_back(QuadPolynomial::constant(QuadScalar(1)));
  if (upto >= 1) f.push_back(QuadPolynomial::monomial(QuadScalar(1), 1));
  const QuadPolynomial t = QuadPolynomial::monomial(QuadScalar(1), 1);
  for (int i = 1; i < upto; ++i) {
    QuadPolynomial next = t * f[static_cast<std::size_t>(i)];
    next -= f[static_cast<std::size_t>(i - 1)] *
            QuadScalar(static_cast<long>(i) * (n - 1) * (d - i + 1));
    f.push_back(next);
  }
  return f;
}

QuadPolynomial char_poly_krawtchouk(int d, int n) {
  QuadPolynomial from_recurrence = char_poly_recurrence(d, n, d + 1).back();

  // monic route: P_{i+1} = (t - d/2) P_i - (i/4)(d - i + 1) P_{i-1}
  const QuadPolynomial t = QuadPolynomial::monomial(QuadScalar(1), 1);
  const QuadScalar half_d(Rational(d, 2));
  std::vector<QuadPolynomial> P;
  P.push_back(QuadPolynomial::constant(QuadScalar(1)));
  P.push_back(t - QuadPolynomial::constant(half_d));
  for (int i = 1; i <= d; ++i) {
    QuadPolynomial next = (t - QuadPolynomial::constant(half_d)) * P[static_cast<std::size_t>(i)];
    next -= P[static_cast<std::size_t>(i - 1)] * QuadScalar(Rational(i * (d - i + 1), 4));
    P.push_back(next);
  }

  // product route: P_{d+1}(x) = x(x-1)...(x-d)
  QuadPolynomial factored = QuadPolynomial::constant(QuadScalar(1));
  for (int j = 0; j <= d; ++j)
    factored = factored * (t - QuadPolynomial::constant(QuadScalar(static_cast<long>(j))));

  // rescale both monic routes: f_{d+1}(t) = w^{d+1} P_{d+1}(t / w + d/2), w = 2 sqrt(n-1)
  const QuadScalar w = QuadScalar(2) * QuadScalar::sqrt_of(n - 1);
  QuadScalar w_pow(1);
  for (int i = 0; i <= d; ++i) w_pow *= w;
  QuadPolynomial from_monic = P.back().shift_scale(w.inverse(), half_d) * w_pow;
  QuadPolynomial from_product = factored.shift_scale(w.inverse(), half_d) * w_pow;

  if (from_recurrence != from_monic)
    throw VerificationError("characteristic polynomial routes disagree",
                            "recurrence vs rescaled monic recurrence for d = " + std::to_string(d) +
                                ", n = " + std::to_string(n));
  if (from_recurrence != from_product)
    throw VerificationError("characteristic polynomial routes disagree",
                            "recurrence vs rescaled factored product for d = " + std::to_string(d) +
                                ", n = " + std::to_string(n));
  return from_recurrence;
}

std::int64_t raising_coefficient(int n, int d, int i) {
  if (i < 0 || i >= d) throw InvalidOperandError("raising_coefficient: slice out of range");
  return static_cast<std::int64_t>(i + 1) * (n - 1) * (d - i);
}

TridiagonalRep tridiagonal_rep(int d, int n) {
  if (d < 0) throw InvalidOperandError("tridiagonal_rep: negative diameter");
  TridiagonalRep rep{d, IntMatrix(static_cast<std::size_t>(d) + 1), {}};
  for (int i = 1; i <= d; ++i) {
    std::int64_t x = raising_coefficient(n, d, i - 1);  // x_i
    rep.sub.push_back(x);
    rep.matrix.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = x;
    rep.matrix.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i)) = 1;
  }
  return rep;
}

CheckResult rep_matrix_spectrum_check(int d, int n) {
  TridiagonalRep rep = tridiagonal_rep(d, n);
  for (int i = 1; i <= d; ++i)
    if (rep.sub[static_cast<std::size_t>(i - 1)] <= 0)
      return CheckResult::failed("subdiagonal entry x_" + std::to_string(i) + " = " +
                                 std::to_string(rep.sub[static_cast<std::size_t>(i - 1)]) +
                                 " is not positive");

  QuadPolynomial f;
  try {
    f = char_poly_krawtchouk(d, n);
  } catch (const VerificationError& e) {
    return CheckResult::failed(e.what());
  }
  if (f.degree() != d + 1)
    return CheckResult::failed("characteristic polynomial degree " + std::to_string(f.degree()) +
                               ", expected " + std::to_string(d + 1));
  if (f.leading_coefficient() != QuadScalar(1))
    return CheckResult::failed("characteristic polynomial is not monic");
  // bipartite parity: f(-t) = (-1)^{d+1} f(t)
  for (int k = 0; k <= d + 1; ++k)
    if ((k % 2) != ((d + 1) % 2) && !f.coefficient(static_cast<std::size_t>(k)).is_zero())
      return CheckResult::failed("coefficient of t^" + std::to_string(k) +
                                 " breaks the parity symmetry");

  const QuadScalar root_unit = QuadScalar::sqrt_of(n - 1);
  std::vector<QuadScalar> roots;
  for (int j = 0; j <= d; ++j)
    roots.push_back(root_unit * QuadScalar(static_cast<long>(d - 2 * j)));
  for (int j = 0; j <= d; ++j) {
    for (int k = j + 1; k <= d; ++k)
      if (roots[static_cast<std::size_t>(j)] == roots[static_cast<std::size_t>(k)])
        return CheckResult::failed("claimed roots " + std::to_string(j) + " and " +
                                   std::to_string(k) + " coincide");
    QuadScalar value = f.eval(roots[static_cast<std::size_t>(j)]);
    if (!value.is_zero())
      return CheckResult::failed("f_{d+1} at root index " + std::to_string(j) + " is " +
                                 value.to_string());
    // independent route: the shifted rep matrix must be singular
    ExactMatrix shifted = ExactMatrix::from_int(rep.matrix);
    for (std::size_t q = 0; q < shifted.order(); ++q)
      shifted.at(q, q) -= roots[static_cast<std::size_t>(j)];
    QuadScalar det = det_exact(shifted);
    if (!det.is_zero())
      return CheckResult::failed("det(rep - theta I) at root index " + std::to_string(j) + " is " +
                                 det.to_string());
  }
  return CheckResult::passed();
}

Integer eigenvalue_multiplicity_sum(int D, int n, int i) {
  if (i < 0 || i > 2 * D)
    throw InvalidOperandError("eigenvalue_multiplicity_sum: index out of range");
  Integer total = 0;
  for (int d = std::abs(D - i); d <= D; ++d) {
    if ((d - (D - i)) % 2 != 0) continue;
    for (int r = 0; r <= D; ++r)
      if (params_admissible(D, r, d)) total += multiplicity(D, n, r, d);
  }
  return total;
}

}  // namespace qham
