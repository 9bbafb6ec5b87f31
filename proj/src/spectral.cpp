#include "qham/spectral.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qham/hamming.hpp"
#include "qham/tmodules.hpp"

namespace qham {
namespace {

static_assert(sizeof(long) == sizeof(std::int64_t), "int64 coefficients are stored as long");

using int128 = __int128;

[[noreturn]] void throw_overflow(const char* where) {
  throw std::overflow_error(std::string("128-bit overflow in ") + where);
}

inline int128 checked_mul(int128 x, int128 y, const char* where) {
  int128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw_overflow(where);
  return r;
}

inline void checked_add(int128& acc, int128 v, const char* where) {
  if (__builtin_add_overflow(acc, v, &acc)) throw_overflow(where);
}

Integer int128_to_mpz(int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

QuadScalar pair_scalar(int128 a, int128 b, std::int64_t m) {
  return QuadScalar(Rational(int128_to_mpz(a)), Rational(int128_to_mpz(b)), m);
}

std::int64_t rational_to_int64(const Rational& q, const char* what) {
  if (q.get_den() != 1) {
    throw VerificationError(what, "value " + q.get_str() + " is not an integer");
  }
  const Integer& num = q.get_num();
  if (!num.fits_slong_p()) throw_overflow(what);
  return num.get_si();
}

// out[r][c] = sum over neighbors v of r of M[v][c]; exact product A * M.
IntMatrix adjacency_times(const FullBipartiteGraph& g, const IntMatrix& M) {
  const std::size_t N = M.order();
  IntMatrix out(N);
  for (std::size_t r = 0; r < N; ++r) {
    for (std::uint32_t v : g.adj[r]) {
      for (std::size_t c = 0; c < N; ++c) {
        std::int64_t acc = out.at(r, c);
        if (__builtin_add_overflow(acc, M.at(v, c), &acc)) throw_overflow("adjacency power");
        out.at(r, c) = acc;
      }
    }
  }
  return out;
}

std::string entry_tag(std::size_t r, std::size_t c) {
  std::ostringstream os;
  os << "(r=" << r << ", c=" << c << ")";
  return os.str();
}

// Remainder of p modulo the monic polynomial mu.
QuadPolynomial poly_mod_monic(const QuadPolynomial& p, const QuadPolynomial& mu) {
  std::vector<QuadScalar> c = p.coefficients();
  const int dm = mu.degree();
  for (int d = static_cast<int>(c.size()) - 1; d >= dm; --d) {
    if (c[static_cast<std::size_t>(d)].is_zero()) continue;
    const QuadScalar f = c[static_cast<std::size_t>(d)];
    for (int k = 0; k <= dm; ++k) {
      c[static_cast<std::size_t>(d - dm + k)] -= f * mu.coefficient(static_cast<std::size_t>(k));
    }
  }
  c.resize(static_cast<std::size_t>(dm));
  return QuadPolynomial(std::move(c));
}

constexpr std::size_t kDirectProductCap = 128;
constexpr std::size_t kStripWidth = 64;

}  // namespace

SpectralData primitive_idempotents(const TerwilligerContext& ctx) {
  SpectralData sd;
  sd.D = ctx.D();
  sd.n = ctx.n();
  sd.order = ctx.order();
  sd.scale = ctx.scale();
  sd.radicand = ctx.radicand();
  const int K = 2 * sd.D + 1;
  const QuadScalar root = ctx.sqrt_n_minus_1();

  for (int i = 0; i < K; ++i) {
    sd.eigen_coeff.push_back(sd.scale * (sd.D - i));
    sd.eigenvalues.push_back(root * QuadScalar(static_cast<long>(sd.D - i)));
  }

  QuadPolynomial mu = QuadPolynomial::constant(QuadScalar(1L));
  for (int j = 0; j < K; ++j) {
    mu = mu * QuadPolynomial({-sd.eigenvalues[static_cast<std::size_t>(j)], QuadScalar(1L)});
  }
  sd.minimal_poly = mu;

  for (int i = 0; i < K; ++i) {
    QuadPolynomial numer = QuadPolynomial::constant(QuadScalar(1L));
    QuadScalar delta(1L);
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      numer = numer * QuadPolynomial({-sd.eigenvalues[static_cast<std::size_t>(j)], QuadScalar(1L)});
      delta *= sd.eigenvalues[static_cast<std::size_t>(i)] - sd.eigenvalues[static_cast<std::size_t>(j)];
    }
    if (!delta.is_rational()) {
      throw VerificationError("lagrange denominator", "delta_" + std::to_string(i) + " is irrational");
    }
    const std::int64_t di = rational_to_int64(delta.rational_part(), "lagrange denominator");
    sd.delta.push_back(di);
    sd.lagrange.push_back(numer * delta.inverse());

    std::vector<std::int64_t> na, nb;
    for (int k = 0; k < K; ++k) {
      const QuadScalar c = numer.coefficient(static_cast<std::size_t>(k));
      na.push_back(rational_to_int64(c.rational_part(), "lagrange numerator"));
      nb.push_back(rational_to_int64(c.radical_part(), "lagrange numerator"));
    }
    sd.numer_a.push_back(std::move(na));
    sd.numer_b.push_back(std::move(nb));
  }

  // scalar certificates: interpolation and the minimal polynomial's roots
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const QuadScalar v = sd.lagrange[static_cast<std::size_t>(i)].eval(sd.eigenvalues[static_cast<std::size_t>(j)]);
      const QuadScalar want(static_cast<long>(i == j ? 1 : 0));
      if (v != want) {
        throw VerificationError("lagrange interpolation",
                                "c_" + std::to_string(i) + "(theta_" + std::to_string(j) + ") = " + v.to_string());
      }
    }
    if (!mu.eval(sd.eigenvalues[static_cast<std::size_t>(i)]).is_zero()) {
      throw VerificationError("minimal polynomial root", "mu(theta_" + std::to_string(i) + ") != 0");
    }
  }

  sd.powers.reserve(static_cast<std::size_t>(K) + 1);
  sd.powers.push_back(IntMatrix::identity(sd.order));
  for (int k = 1; k <= K; ++k) {
    sd.powers.push_back(adjacency_times(ctx.graph(), sd.powers.back()));
  }

  for (int i = 0; i < K; ++i) {
    QuadScalar tr(0L);
    for (int k = 0; k < K; ++k) {
      tr.add_mul_int(sd.lagrange[static_cast<std::size_t>(i)].coefficient(static_cast<std::size_t>(k)),
                     sd.powers[static_cast<std::size_t>(k)].trace());
    }
    if (!tr.is_rational()) {
      throw VerificationError("trace multiplicity", "m_" + std::to_string(i) + " = " + tr.to_string());
    }
    const Rational& q = tr.rational_part();
    if (q.get_den() != 1 || sgn(q) < 0) {
      throw VerificationError("trace multiplicity", "m_" + std::to_string(i) + " = " + q.get_str());
    }
    sd.multiplicities.push_back(q.get_num());
  }
  return sd;
}

ExactMatrix idempotent_matrix(const SpectralData& sd, int i) {
  const int K = 2 * sd.D + 1;
  ExactMatrix E(sd.order);
  const auto& poly = sd.lagrange[static_cast<std::size_t>(i)];
  for (std::size_t r = 0; r < sd.order; ++r) {
    for (std::size_t c = 0; c < sd.order; ++c) {
      QuadScalar acc(0L);
      for (int k = 0; k < K; ++k) {
        acc.add_mul_int(poly.coefficient(static_cast<std::size_t>(k)),
                        sd.powers[static_cast<std::size_t>(k)].at(r, c));
      }
      E.at(r, c) = acc;
    }
  }
  return E;
}

SpectrumChecks verify_spectrum(const TerwilligerContext& ctx, const SpectralData& sd) {
  SpectrumChecks out;
  const int K = 2 * sd.D + 1;
  const std::size_t N = sd.order;
  const std::int64_t m = sd.radicand;

  for (int i = 0; i < K && out.eigenvalues_distinct.pass; ++i) {
    for (int j = i + 1; j < K; ++j) {
      if (sd.eigenvalues[static_cast<std::size_t>(i)] == sd.eigenvalues[static_cast<std::size_t>(j)]) {
        out.eigenvalues_distinct = CheckResult::failed(
            "theta_" + std::to_string(i) + " = theta_" + std::to_string(j));
        break;
      }
    }
  }

  // E_i != 0: the verified positive trace already implies it; exhibit an
  // explicit nonzero diagonal entry as well.
  for (int i = 0; i < K && out.idempotents_nonzero.pass; ++i) {
    if (sd.multiplicities[static_cast<std::size_t>(i)] < 1) {
      out.idempotents_nonzero = CheckResult::failed(
          "trace(E_" + std::to_string(i) + ") = " + sd.multiplicities[static_cast<std::size_t>(i)].get_str());
      break;
    }
    bool found = false;
    for (std::size_t r = 0; r < N && !found; ++r) {
      int128 a = 0, b = 0;
      for (int k = 0; k < K; ++k) {
        const std::int64_t v = sd.powers[static_cast<std::size_t>(k)].at(r, r);
        checked_add(a, checked_mul(sd.numer_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], v, "nonzero scan"), "nonzero scan");
        checked_add(b, checked_mul(sd.numer_b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], v, "nonzero scan"), "nonzero scan");
      }
      found = (a != 0 || b != 0);
    }
    if (!found) {
      out.idempotents_nonzero = CheckResult::failed("E_" + std::to_string(i) + " has zero diagonal");
    }
  }

  // one fused sweep over all entries: minimal polynomial, resolution of the
  // identity, and the eigenvalue equation for every i
  std::vector<std::int64_t> mua(static_cast<std::size_t>(K) + 1), mub(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    const QuadScalar c = sd.minimal_poly.coefficient(static_cast<std::size_t>(k));
    mua[static_cast<std::size_t>(k)] = rational_to_int64(c.rational_part(), "minimal polynomial");
    mub[static_cast<std::size_t>(k)] = rational_to_int64(c.radical_part(), "minimal polynomial");
  }

  Integer lcm_delta(1);
  for (int i = 0; i < K; ++i) {
    Integer di(static_cast<long>(sd.delta[static_cast<std::size_t>(i)]));
    mpz_lcm(lcm_delta.get_mpz_t(), lcm_delta.get_mpz_t(), di.get_mpz_t());
  }
  if (!lcm_delta.fits_slong_p()) throw_overflow("resolution scaling");
  const std::int64_t resolution_scale = lcm_delta.get_si();
  std::vector<int128> ra(static_cast<std::size_t>(K), 0), rb(static_cast<std::size_t>(K), 0);
  for (int i = 0; i < K; ++i) {
    const std::int64_t f = resolution_scale / sd.delta[static_cast<std::size_t>(i)];
    for (int k = 0; k < K; ++k) {
      checked_add(ra[static_cast<std::size_t>(k)], checked_mul(f, sd.numer_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], "resolution combo"), "resolution combo");
      checked_add(rb[static_cast<std::size_t>(k)], checked_mul(f, sd.numer_b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], "resolution combo"), "resolution combo");
    }
  }

  std::vector<std::int64_t> v(static_cast<std::size_t>(K) + 1);
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      for (int k = 0; k <= K; ++k) v[static_cast<std::size_t>(k)] = sd.powers[static_cast<std::size_t>(k)].at(r, c);

      if (out.minimal_polynomial.pass) {
        int128 pa = 0, pb = 0;
        for (int k = 0; k <= K; ++k) {
          checked_add(pa, checked_mul(mua[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "mu sweep"), "mu sweep");
          checked_add(pb, checked_mul(mub[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "mu sweep"), "mu sweep");
        }
        if (pa != 0 || pb != 0) {
          out.minimal_polynomial = CheckResult::failed(
              "mu(A)" + entry_tag(r, c) + " = " + pair_scalar(pa, pb, m).to_string());
        }
      }

      if (out.resolution_of_identity.pass) {
        int128 pa = 0, pb = 0;
        for (int k = 0; k < K; ++k) {
          checked_add(pa, checked_mul(ra[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "resolution sweep"), "resolution sweep");
          checked_add(pb, checked_mul(rb[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "resolution sweep"), "resolution sweep");
        }
        const int128 want = (r == c) ? static_cast<int128>(resolution_scale) : 0;
        if (pa != want || pb != 0) {
          out.resolution_of_identity = CheckResult::failed("sum of idempotents differs from I at " + entry_tag(r, c));
        }
      }

      if (out.eigen_equation.pass) {
        for (int i = 0; i < K; ++i) {
          const auto& na = sd.numer_a[static_cast<std::size_t>(i)];
          const auto& nb = sd.numer_b[static_cast<std::size_t>(i)];
          int128 a1 = 0, b1 = 0, a0 = 0, b0 = 0;
          for (int k = 0; k < K; ++k) {
            checked_add(a1, checked_mul(na[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k) + 1], "eigen sweep"), "eigen sweep");
            checked_add(b1, checked_mul(nb[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k) + 1], "eigen sweep"), "eigen sweep");
            checked_add(a0, checked_mul(na[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "eigen sweep"), "eigen sweep");
            checked_add(b0, checked_mul(nb[static_cast<std::size_t>(k)], v[static_cast<std::size_t>(k)], "eigen sweep"), "eigen sweep");
          }
          const std::int64_t t = sd.eigen_coeff[static_cast<std::size_t>(i)];
          // A E_i = theta_i E_i with theta_i = t sqrt(m) splits into the
          // rational part a1 = t m b0 and the radical part b1 = t a0; for
          // m = 1 the scalars fold their radical part away, so theta_i = t
          // acts on the rational part directly
          const bool ok = (m == 1) ? (a1 == checked_mul(t, a0, "eigen sweep") && b1 == 0 && b0 == 0)
                                   : (a1 == checked_mul(t, checked_mul(m, b0, "eigen sweep"), "eigen sweep") &&
                                      b1 == checked_mul(t, a0, "eigen sweep"));
          if (!ok) {
            out.eigen_equation = CheckResult::failed(
                "(A E_" + std::to_string(i) + " - theta_" + std::to_string(i) + " E_" + std::to_string(i) + ")" +
                entry_tag(r, c) + " != 0");
            break;
          }
        }
      }
    }
  }

  // products: c_i c_j - delta_ij c_i must vanish modulo mu; combined with the
  // verified mu(A) = 0 this gives E_i E_j = delta_ij E_i. On small instances
  // the dense products are also multiplied out literally.
  if (!out.minimal_polynomial.pass) {
    out.idempotent_products = CheckResult::failed(
        "mu(A) = 0 failed, products not certified: " + out.minimal_polynomial.witness);
  } else {
    for (int i = 0; i < K && out.idempotent_products.pass; ++i) {
      for (int j = i; j < K; ++j) {
        QuadPolynomial g = sd.lagrange[static_cast<std::size_t>(i)] * sd.lagrange[static_cast<std::size_t>(j)];
        if (i == j) g -= sd.lagrange[static_cast<std::size_t>(i)];
        const QuadPolynomial rem = poly_mod_monic(g, sd.minimal_poly);
        if (!rem.is_zero()) {
          out.idempotent_products = CheckResult::failed(
              "c_" + std::to_string(i) + " c_" + std::to_string(j) + " mod mu = " + rem.to_string());
          break;
        }
      }
    }
    if (out.idempotent_products.pass && N <= kDirectProductCap) {
      std::vector<ExactMatrix> E;
      E.reserve(static_cast<std::size_t>(K));
      for (int i = 0; i < K; ++i) E.push_back(idempotent_matrix(sd, i));
      for (int i = 0; i < K && out.idempotent_products.pass; ++i) {
        for (int j = i; j < K; ++j) {
          ExactMatrix prod = E[static_cast<std::size_t>(i)] * E[static_cast<std::size_t>(j)];
          if (i == j) prod -= E[static_cast<std::size_t>(i)];
          if (const auto bad = prod.first_nonzero()) {
            out.idempotent_products = CheckResult::failed(
                "E_" + std::to_string(i) + " E_" + std::to_string(j) + " differs at " +
                entry_tag(bad->first, bad->second));
            break;
          }
        }
      }
    }
  }

  // trace multiplicities: symmetry, total dimension, first two power sums
  {
    std::ostringstream bad;
    Integer total(0);
    QuadScalar s1(0L), s2(0L);
    for (int i = 0; i < K; ++i) {
      total += sd.multiplicities[static_cast<std::size_t>(i)];
      QuadScalar mi(Rational(sd.multiplicities[static_cast<std::size_t>(i)]));
      s1 += mi * sd.eigenvalues[static_cast<std::size_t>(i)];
      s2 += mi * sd.eigenvalues[static_cast<std::size_t>(i)] * sd.eigenvalues[static_cast<std::size_t>(i)];
      if (bad.str().empty() &&
          sd.multiplicities[static_cast<std::size_t>(i)] != sd.multiplicities[static_cast<std::size_t>(2 * sd.D - i)]) {
        bad << "m_" << i << " != m_" << (2 * sd.D - i);
      }
    }
    Integer expected(1);
    for (int k = 0; k < sd.D; ++k) expected *= sd.n;
    if (bad.str().empty() && total != expected) {
      bad << "sum of multiplicities " << total.get_str() << " != " << expected.get_str();
    }
    if (bad.str().empty() && !s1.is_zero()) {
      bad << "sum m_i theta_i = " << s1.to_string() << " != trace(A) = 0";
    }
    const QuadScalar edge_sum(static_cast<long>(2 * ctx.graph().edge_count));
    if (bad.str().empty() && s2 != edge_sum) {
      bad << "sum m_i theta_i^2 = " << s2.to_string() << " != 2|E| = " << edge_sum.to_string();
    }
    if (!bad.str().empty()) out.multiplicities = CheckResult::failed(bad.str());
  }
  return out;
}

ZeroBlockReport verify_zero_blocks(const TerwilligerContext& ctx, const SpectralData& sd) {
  ZeroBlockReport out;
  const int K = 2 * sd.D + 1;
  const std::size_t N = sd.order;
  const std::int64_t m = sd.radicand;
  const QuadScalar root = ctx.sqrt_n_minus_1();

  out.block_nonzero.assign(static_cast<std::size_t>(K), std::vector<bool>(static_cast<std::size_t>(K), false));
  out.block_witness.assign(static_cast<std::size_t>(K), std::vector<std::string>(static_cast<std::size_t>(K)));

  // closed form for the scalar factor that controls which blocks survive:
  // (theta_i - theta_j)((theta_i - theta_j)^2 - 4(n-1))
  //   = sqrt(n-1)(n-1)(j-i)(j-i-2)(j-i+2), zero exactly when |i-j| is 0 or 2
  for (int i = 0; i < K && out.scalar_factor.pass; ++i) {
    for (int j = 0; j < K; ++j) {
      const QuadScalar diff = sd.eigenvalues[static_cast<std::size_t>(i)] - sd.eigenvalues[static_cast<std::size_t>(j)];
      const QuadScalar lhs = diff * (diff * diff - QuadScalar(static_cast<long>(4 * (sd.n - 1))));
      const long ji = j - i;
      const QuadScalar rhs =
          root * QuadScalar(static_cast<long>(sd.n - 1)) * QuadScalar(ji) * QuadScalar(ji - 2) * QuadScalar(ji + 2);
      const int dist = std::abs(i - j);
      if (lhs != rhs || (lhs.is_zero() != (dist == 0 || dist == 2))) {
        out.scalar_factor = CheckResult::failed(
            "factor mismatch at (i, j) = (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        break;
      }
    }
  }

  const auto& g = ctx.graph();
  const std::size_t entries = N * kStripWidth;
  std::vector<std::vector<std::int64_t>> T(static_cast<std::size_t>(K) * static_cast<std::size_t>(K));
  std::vector<std::vector<int128>> Za(T.size()), Zb(T.size());
  const auto slot = [K](int k, int l) {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(K) + static_cast<std::size_t>(l);
  };

  for (std::size_t c0 = 0; c0 < N; c0 += kStripWidth) {
    const std::size_t width = std::min(kStripWidth, N - c0);

    // T[k][l] = (A^k A* A^l)[:, strip], chained over k by one adjacency step
    for (int l = 0; l < K; ++l) {
      auto& base = T[slot(0, l)];
      base.assign(entries, 0);
      const auto& P = sd.powers[static_cast<std::size_t>(l)];
      for (std::size_t r = 0; r < N; ++r) {
        const std::int64_t ts = ctx.theta_star(g.weight[r]);
        for (std::size_t c = 0; c < width; ++c) {
          base[r * kStripWidth + c] = ts * P.at(r, c0 + c);
        }
      }
      for (int k = 1; k < K; ++k) {
        auto& cur = T[slot(k, l)];
        cur.assign(entries, 0);
        const auto& prev = T[slot(k - 1, l)];
        for (std::size_t r = 0; r < N; ++r) {
          for (std::uint32_t nb : g.adj[r]) {
            const std::size_t src = static_cast<std::size_t>(nb) * kStripWidth;
            for (std::size_t c = 0; c < width; ++c) {
              std::int64_t acc = cur[r * kStripWidth + c];
              if (__builtin_add_overflow(acc, prev[src + c], &acc)) throw_overflow("block chain");
              cur[r * kStripWidth + c] = acc;
            }
          }
        }
      }
    }

    // Z[i][l] = sum_k numer_i[k] T[k][l], the left combo shared by every j
    for (int i = 0; i < K; ++i) {
      for (int l = 0; l < K; ++l) {
        auto& za = Za[slot(i, l)];
        auto& zb = Zb[slot(i, l)];
        za.assign(entries, 0);
        zb.assign(entries, 0);
        for (int k = 0; k < K; ++k) {
          const std::int64_t ca = sd.numer_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          const std::int64_t cb = sd.numer_b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          if (ca == 0 && cb == 0) continue;
          const auto& t = T[slot(k, l)];
          for (std::size_t e = 0; e < entries; ++e) {
            if (t[e] == 0) continue;
            if (ca != 0) checked_add(za[e], checked_mul(ca, t[e], "block combo"), "block combo");
            if (cb != 0) checked_add(zb[e], checked_mul(cb, t[e], "block combo"), "block combo");
          }
        }
      }
    }

    // delta_i delta_j E_i A* E_j = sum_l numer_j[l] Z[i][l] (as a quadratic
    // form in the two coefficient pairs); symmetric in (i, j) by transpose
    for (int i = 0; i < K; ++i) {
      for (int j = i; j < K; ++j) {
        if (out.block_nonzero[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        const int dist = j - i;
        const bool forbidden = (dist != 0 && dist != 2);
        for (std::size_t r = 0; r < N; ++r) {
          for (std::size_t c = 0; c < width; ++c) {
            int128 accA = 0, accB = 0;
            for (int l = 0; l < K; ++l) {
              const std::int64_t ca = sd.numer_a[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
              const std::int64_t cb = sd.numer_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
              const int128 za = Za[slot(i, l)][r * kStripWidth + c];
              const int128 zb = Zb[slot(i, l)][r * kStripWidth + c];
              if (ca != 0) {
                checked_add(accA, checked_mul(ca, za, "block sum"), "block sum");
                checked_add(accB, checked_mul(ca, zb, "block sum"), "block sum");
              }
              if (cb != 0) {
                checked_add(accA, checked_mul(checked_mul(m, cb, "block sum"), zb, "block sum"), "block sum");
                checked_add(accB, checked_mul(cb, za, "block sum"), "block sum");
              }
            }
            if (accA == 0 && accB == 0) continue;
            const QuadScalar denom(Rational(static_cast<long>(sd.delta[static_cast<std::size_t>(i)])) *
                                   Rational(static_cast<long>(sd.delta[static_cast<std::size_t>(j)])));
            const QuadScalar value = pair_scalar(accA, accB, m) / denom;
            const std::string tag = "E_" + std::to_string(i) + " A* E_" + std::to_string(j) +
                                    entry_tag(r, c0 + c) + " = " + value.to_string();
            out.block_nonzero[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
            out.block_nonzero[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
            out.block_witness[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = tag;
            if (i != j) {
              out.block_witness[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                  "E_" + std::to_string(j) + " A* E_" + std::to_string(i) + entry_tag(c0 + c, r) + " = " +
                  value.to_string();
            }
            if (forbidden && out.forbidden_blocks.pass) {
              out.forbidden_blocks = CheckResult::failed(tag);
            }
            r = N;  // first witness found; leave the block's entry scan
            break;
          }
        }
      }
    }
  }
  return out;
}

OrderingReport verify_orderings(const ZeroBlockReport& blocks, int D) {
  OrderingReport out;
  const int K = 2 * D + 1;
  for (int i = 0; i < K; i += 2) out.even_first.push_back(i);
  for (int i = 1; i < K; i += 2) out.even_first.push_back(i);
  for (int i = 1; i < K; i += 2) out.odd_first.push_back(i);
  for (int i = 0; i < K; i += 2) out.odd_first.push_back(i);

  const auto tridiagonal = [&](const std::vector<int>& order) {
    for (int k = 0; k < K; ++k) {
      for (int l = k + 2; l < K; ++l) {
        const int i = order[static_cast<std::size_t>(k)];
        const int j = order[static_cast<std::size_t>(l)];
        if (blocks.block_nonzero[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          return CheckResult::failed("positions (" + std::to_string(k) + ", " + std::to_string(l) +
                                     ") hold the nonzero block (E_" + std::to_string(i) + ", E_" +
                                     std::to_string(j) + ")");
        }
      }
    }
    return CheckResult::passed();
  };
  out.even_first_tridiagonal = tridiagonal(out.even_first);
  out.odd_first_tridiagonal = tridiagonal(out.odd_first);

  // the natural order 0, 1, ..., 2D must fail, and the first violation must
  // sit on a |k - l| = 2 block
  bool found = false;
  for (int k = 0; k < K && !found; ++k) {
    for (int l = k + 2; l < K && !found; ++l) {
      if (blocks.block_nonzero[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]) {
        found = true;
        out.natural_witness = "natural positions (" + std::to_string(k) + ", " + std::to_string(l) +
                              ") hold a nonzero block";
        if (l - k != 2) {
          out.natural_order_control =
              CheckResult::failed("first natural violation is not a distance-2 block: " + out.natural_witness);
        }
      }
    }
  }
  if (!found) {
    out.natural_order_control = CheckResult::failed("natural order is tridiagonal; expected a violation");
  }
  return out;
}

CheckResult verify_dual_generation(const TerwilligerContext& ctx) {
  const int D = ctx.D();
  const std::size_t order = ctx.order();

  for (int i = 0; i <= D; ++i) {
    for (int j = i + 1; j <= D; ++j) {
      if (ctx.theta_star(i) == ctx.theta_star(j)) {
        return CheckResult::failed("theta*_" + std::to_string(i) + " = theta*_" + std::to_string(j));
      }
    }
  }

  std::vector<std::vector<QuadScalar>> vand(static_cast<std::size_t>(D) + 1);
  for (int j = 0; j <= D; ++j) {
    QuadScalar p(1L);
    const QuadScalar ts(static_cast<long>(ctx.theta_star(j)));
    for (int k = 0; k <= D; ++k) {
      vand[static_cast<std::size_t>(j)].push_back(p);
      p *= ts;
    }
  }

  for (int i = 0; i <= D; ++i) {
    std::vector<QuadScalar> rhs(static_cast<std::size_t>(D) + 1, QuadScalar(0L));
    rhs[static_cast<std::size_t>(i)] = QuadScalar(1L);
    std::vector<QuadScalar> q;
    try {
      q = solve_linear(vand, rhs);
    } catch (const InvalidOperandError& e) {
      return CheckResult::failed(std::string("dual Vandermonde system is singular: ") + e.what());
    }
    // re-evaluate the polynomial on every diagonal entry of A*
    const auto& weights = ctx.graph().weight;
    for (std::size_t v = 0; v < order; ++v) {
      QuadScalar acc(0L);
      QuadScalar p(1L);
      const QuadScalar ts(static_cast<long>(ctx.theta_star(weights[v])));
      for (int k = 0; k <= D; ++k) {
        acc += q[static_cast<std::size_t>(k)] * p;
        p *= ts;
      }
      const QuadScalar want(static_cast<long>(weights[v] == i ? 1 : 0));
      if (acc != want) {
        return CheckResult::failed("E*_" + std::to_string(i) + " reconstruction differs at vertex " +
                                   std::to_string(v));
      }
    }
  }
  return CheckResult::passed();
}

namespace {

bool vector_zero(const std::vector<QuadScalar>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

// (Lv)[u] sums v over the neighbors of u one weight class above u; R is the
// mirror one class below.
std::vector<QuadScalar> apply_lowering(const FullBipartiteGraph& g, const std::vector<QuadScalar>& v, bool raise) {
  std::vector<QuadScalar> out(v.size(), QuadScalar(0L));
  for (std::size_t u = 0; u < v.size(); ++u) {
    const int target = g.weight[u] + (raise ? -1 : 1);
    for (std::uint32_t z : g.adj[u]) {
      if (g.weight[z] == target && !v[z].is_zero()) out[u] += v[z];
    }
  }
  return out;
}

std::vector<QuadScalar> apply_dual_idempotent(const FullBipartiteGraph& g, const std::vector<QuadScalar>& v, int i) {
  std::vector<QuadScalar> out(v.size(), QuadScalar(0L));
  for (std::size_t u = 0; u < v.size(); ++u) {
    if (g.weight[u] == i) out[u] = v[u];
  }
  return out;
}

}  // namespace

SubmoduleReport generate_submodule(const TerwilligerContext& ctx, std::vector<QuadScalar> seed) {
  const std::size_t N = ctx.order();
  const int D = ctx.D();
  if (seed.size() != N) throw InvalidOperandError("seed length does not match the vertex count");
  if (vector_zero(seed)) throw InvalidOperandError("seed vector is zero");

  const auto& g = ctx.graph();
  SubmoduleReport out;

  RowBasis basis(N);
  std::deque<std::vector<QuadScalar>> work;
  basis.insert(seed);
  work.push_back(std::move(seed));
  while (!work.empty()) {
    const std::vector<QuadScalar> v = std::move(work.front());
    work.pop_front();
    std::vector<std::vector<QuadScalar>> images;
    images.push_back(apply_lowering(g, v, false));
    images.push_back(apply_lowering(g, v, true));
    for (int i = 0; i <= D; ++i) images.push_back(apply_dual_idempotent(g, v, i));
    for (auto& w : images) {
      if (vector_zero(w)) continue;
      if (basis.insert(w)) work.push_back(std::move(w));
    }
  }
  out.dimension = basis.rank();

  std::size_t rank_sum = 0;
  for (int i = 0; i <= D; ++i) {
    RowBasis slice(N);
    for (const auto& row : basis.rows()) {
      auto masked = apply_dual_idempotent(g, row, i);
      if (!vector_zero(masked)) slice.insert(std::move(masked));
    }
    out.slice_ranks.push_back(slice.rank());
    rank_sum += slice.rank();
  }
  if (rank_sum != out.dimension) {
    throw VerificationError("submodule slice decomposition",
                            "slice ranks sum to " + std::to_string(rank_sum) + " for dimension " +
                                std::to_string(out.dimension));
  }

  int last = -1;
  int nonvanishing = 0;
  for (int i = 0; i <= D; ++i) {
    if (out.slice_ranks[static_cast<std::size_t>(i)] == 0) continue;
    if (out.endpoint < 0) out.endpoint = i;
    last = i;
    ++nonvanishing;
  }
  out.diameter = nonvanishing - 1;
  out.contiguous = (nonvanishing == last - out.endpoint + 1);
  out.thin = true;
  for (std::size_t rank : out.slice_ranks) {
    if (rank > 1) out.thin = false;
  }

  out.basis_attempted = out.thin && out.contiguous && out.dimension >= 1;
  if (!out.basis_attempted) return out;

  const int r = out.endpoint;
  const int d = out.diameter;

  // ladder basis: the top slice vector, then repeated lowering
  RowBasis top_slice(N);
  for (const auto& row : basis.rows()) {
    auto masked = apply_dual_idempotent(g, row, last);
    if (!vector_zero(masked)) top_slice.insert(std::move(masked));
  }
  std::vector<std::vector<QuadScalar>> ladder(static_cast<std::size_t>(d) + 1);
  ladder[static_cast<std::size_t>(d)] = top_slice.rows().front();
  for (int i = d; i > 0; --i) {
    ladder[static_cast<std::size_t>(i) - 1] = apply_lowering(g, ladder[static_cast<std::size_t>(i)], false);
  }

  std::ostringstream bad;
  for (int i = 0; i <= d && bad.str().empty(); ++i) {
    if (vector_zero(ladder[static_cast<std::size_t>(i)])) {
      bad << "ladder vector w_" << (r + i) << " vanishes";
    } else if (!basis.contains(ladder[static_cast<std::size_t>(i)])) {
      bad << "ladder vector w_" << (r + i) << " leaves the closure";
    }
  }
  if (bad.str().empty() && !vector_zero(apply_lowering(g, ladder[0], false))) {
    bad << "L w_" << r << " != 0";
  }
  if (bad.str().empty() && !vector_zero(apply_lowering(g, ladder[static_cast<std::size_t>(d)], true))) {
    bad << "R w_" << (r + d) << " != 0";
  }
  for (int i = 0; i < d && bad.str().empty(); ++i) {
    const std::int64_t x = raising_coefficient(ctx.n(), d, i);
    out.raising_coefficients.push_back(x);
    auto raised = apply_lowering(g, ladder[static_cast<std::size_t>(i)], true);
    const auto& next = ladder[static_cast<std::size_t>(i) + 1];
    for (std::size_t u = 0; u < N && bad.str().empty(); ++u) {
      if (raised[u] != next[u] * QuadScalar(static_cast<long>(x))) {
        bad << "R w_" << (r + i) << " != " << x << " w_" << (r + i + 1) << " at vertex " << u;
      }
    }
  }
  out.basis = bad.str().empty() ? CheckResult::passed() : CheckResult::failed(bad.str());
  return out;
}

std::vector<QuadScalar> seed_primary(const TerwilligerContext& ctx) {
  std::vector<QuadScalar> v(ctx.order(), QuadScalar(0L));
  v[ctx.graph().base] = QuadScalar(1L);
  return v;
}

std::vector<QuadScalar> seed_e1_diff(const TerwilligerContext& ctx) {
  // two weight-1 words with the same nonzero coordinate and different values;
  // the difference closes to a thin module with endpoint 1 and diameter D - 1
  std::vector<QuadScalar> v(ctx.order(), QuadScalar(0L));
  v[1] = QuadScalar(1L);
  v[2] = QuadScalar(-1L);
  return v;
}

}  // namespace qham
