#pragma once

#include <cstdint>
#include <vector>

#include "qham/matrix.hpp"
#include "qham/qnum.hpp"
#include "qham/terwilliger.hpp"

namespace qham {

/// Endpoint r and diameter d of an irreducible module type.
struct ModuleParams {
  int r = 0;
  int d = 0;
  friend bool operator==(const ModuleParams&, const ModuleParams&) = default;
};

/// 0 <= r <= r + d <= D <= 2r + d.
bool params_admissible(int D, int r, int d);

/// All admissible (r, d), ordered by d descending then r ascending.
std::vector<ModuleParams> admissible_params(int D);

/// Multiplicity of the (r, d) module type, two closed forms. Both must agree
/// and be positive integers; multiplicity() verifies that and returns the
/// common value, throwing VerificationError otherwise.
Integer multiplicity_form1(int D, int n, int r, int d);
Integer multiplicity_form2(int D, int n, int r, int d);
Integer multiplicity(int D, int n, int r, int d);

struct AuditRow {
  int r = 0;
  int d = 0;
  Integer mult;
  int dim = 0;  // d + 1
};

struct DimensionAudit {
  std::vector<AuditRow> rows;
  Integer total;     // sum of mult * dim
  Integer expected;  // n^D
  bool ok = false;
};

/// Counting audit: the module types, weighted by multiplicity and dimension,
/// must fill the whole standard module.
DimensionAudit dimension_audit(int D, int n);

/// f_0 .. f_upto with f_{i+1} = t f_i - i(n-1)(d-i+1) f_{i-1}, f_0 = 1, f_1 = t.
std::vector<QuadPolynomial> char_poly_recurrence(int d, int n, int upto);

/// f_{d+1} computed three ways (the recurrence; the scaled/shifted monic
/// recurrence; the scaled/shifted falling-factorial product). All three must
/// agree coefficient for coefficient; throws VerificationError otherwise.
QuadPolynomial char_poly_krawtchouk(int d, int n);

/// x_{i+1} = (i+1)(n-1)(d-i): coefficient of the raising action from slice
/// r+i to slice r+i+1, for 0 <= i <= d-1.
std::int64_t raising_coefficient(int n, int d, int i);

/// The (d+1) x (d+1) matrix of A on a module basis: superdiagonal ones,
/// subdiagonal x_1 .. x_d.
struct TridiagonalRep {
  int d = 0;
  IntMatrix matrix;
  std::vector<std::int64_t> sub;  // x_1 .. x_d
};

TridiagonalRep tridiagonal_rep(int d, int n);

/// The rep matrix has characteristic polynomial f_{d+1} with simple roots
/// sqrt(n-1)(d - 2j), j = 0..d: checks degree, parity symmetry, exact
/// vanishing of f_{d+1} at each root, root distinctness, and (independently)
/// det(theta I - rep) = 0 by exact elimination.
CheckResult rep_matrix_spectrum_check(int d, int n);

/// Multiplicity of the eigenvalue sqrt(n-1)(D - i), 0 <= i <= 2D, as a sum of
/// module multiplicities over the types whose spectra contain it.
Integer eigenvalue_multiplicity_sum(int D, int n, int i);

}  // namespace qham
