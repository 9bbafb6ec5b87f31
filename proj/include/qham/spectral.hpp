#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qham/matrix.hpp"
#include "qham/qnum.hpp"
#include "qham/terwilliger.hpp"

namespace qham {

/// Exact spectral decomposition data: eigenvalues theta_i = sqrt(n-1)(D - i)
/// for i = 0..2D, the Lagrange coefficient polynomials c_i with E_i = c_i(A),
/// integer powers of A, and the trace multiplicities.
struct SpectralData {
  int D = 0;
  int n = 0;
  std::size_t order = 0;
  std::int64_t scale = 1;     // sqrt(n-1) = scale * sqrt(radicand)
  std::int64_t radicand = 1;  // squarefree

  std::vector<QuadScalar> eigenvalues;        // theta_0 > ... > theta_2D
  std::vector<std::int64_t> eigen_coeff;      // theta_i = eigen_coeff[i] * sqrt(radicand)
  std::vector<QuadPolynomial> lagrange;       // E_i = lagrange[i](A)
  QuadPolynomial minimal_poly;                // prod_i (t - theta_i)
  std::vector<IntMatrix> powers;              // A^0 .. A^{2D+1}
  std::vector<Integer> multiplicities;        // m_i = trace(E_i)

  // factored form lagrange[i] = numer_i(t) / delta_i: numer_i has coefficient
  // pairs (numer_a[i][k] + numer_b[i][k] * sqrt(radicand)) and the denominator
  // delta_i = prod_{j != i} (theta_i - theta_j) is a plain integer. Keeping the
  // numerators small lets the matrix sweeps run in checked 128-bit arithmetic.
  std::vector<std::vector<std::int64_t>> numer_a, numer_b;  // [i][k], k = 0..2D
  std::vector<std::int64_t> delta;                          // [i]
};

/// Builds SpectralData and verifies its scalar-level invariants (distinct
/// eigenvalues, c_i(theta_j) = delta_ij, minimal polynomial vanishing at each
/// theta_i, integral nonnegative trace multiplicities). Matrix-level
/// invariants are checked by verify_spectrum. Throws VerificationError.
SpectralData primitive_idempotents(const TerwilligerContext& ctx);

/// Materialize E_i as a dense exact matrix.
ExactMatrix idempotent_matrix(const SpectralData& sd, int i);

struct SpectrumChecks {
  CheckResult eigenvalues_distinct;
  CheckResult idempotents_nonzero;      // every E_i != 0
  CheckResult eigen_equation;           // A E_i = theta_i E_i, entrywise
  CheckResult resolution_of_identity;   // sum_i E_i = I, entrywise
  CheckResult minimal_polynomial;       // mu(A) = 0, entrywise
  CheckResult idempotent_products;      // E_i E_j = delta_ij E_i
  CheckResult multiplicities;           // traces: integrality, symmetry, sums
};

/// All matrix-level spectral checks, exact. The product check verifies the
/// polynomial identity c_i c_j - delta_ij c_i = 0 mod mu against the verified
/// mu(A) = 0, and additionally multiplies the dense idempotents literally on
/// small instances.
SpectrumChecks verify_spectrum(const TerwilligerContext& ctx, const SpectralData& sd);

struct ZeroBlockReport {
  CheckResult forbidden_blocks;                  // E_i A* E_j = 0 off |i-j| in {0, 2}
  CheckResult scalar_factor;                     // the closed-form factor identity
  std::vector<std::vector<bool>> block_nonzero;  // (2D+1) x (2D+1)
  std::vector<std::vector<std::string>> block_witness;  // first nonzero entry, if any
};

/// Computes every block E_i A* E_j exactly and classifies it as zero or
/// nonzero (with a deterministic witness entry for nonzero blocks).
ZeroBlockReport verify_zero_blocks(const TerwilligerContext& ctx, const SpectralData& sd);

struct OrderingReport {
  std::vector<int> even_first;  // 0, 2, ..., 2D, 1, 3, ..., 2D-1
  std::vector<int> odd_first;   // 1, 3, ..., 2D-1, 0, 2, ..., 2D
  CheckResult even_first_tridiagonal;
  CheckResult odd_first_tridiagonal;
  CheckResult natural_order_control;  // natural order must violate at |k-l| = 2
  std::string natural_witness;
};

/// Block-tridiagonality of A* under the two reorderings, and the negative
/// control on the natural order, all read off the computed block structure.
OrderingReport verify_orderings(const ZeroBlockReport& blocks, int D);

/// theta*_i are distinct and every dual idempotent is a polynomial in A*:
/// solves the Vandermonde system exactly and re-evaluates the reconstruction
/// on the diagonal.
CheckResult verify_dual_generation(const TerwilligerContext& ctx);

struct SubmoduleReport {
  std::size_t dimension = 0;
  std::vector<std::size_t> slice_ranks;  // dim E*_i W for i = 0..D
  int endpoint = -1;                     // least i with E*_i W != 0
  int diameter = -1;                     // number of nonvanishing slices - 1
  bool contiguous = false;
  bool thin = false;
  bool basis_attempted = false;  // thin and contiguous
  CheckResult basis;             // ladder action checks, when attempted
  std::vector<std::int64_t> raising_coefficients;  // x_1 .. x_d verified
};

/// Closure of the seed vector under L, R and the dual idempotents, with slice
/// analysis; for thin contiguous closures, builds the ladder basis by
/// descending with L from the top slice and verifies the R action exactly.
SubmoduleReport generate_submodule(const TerwilligerContext& ctx, std::vector<QuadScalar> seed);

/// Unit vector on the base vertex.
std::vector<QuadScalar> seed_primary(const TerwilligerContext& ctx);
/// Difference of two weight-1 vertices carrying different values of the same
/// coordinate; closes to a thin endpoint-1 module.
std::vector<QuadScalar> seed_e1_diff(const TerwilligerContext& ctx);

}  // namespace qham
