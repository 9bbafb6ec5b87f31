#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qham/hamming.hpp"
#include "qham/matrix.hpp"
#include "qham/qnum.hpp"

namespace qham {

/// A construction-time invariant failed; carries the violated identity.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string identity, std::string witness)
      : std::runtime_error(identity + ": " + witness),
        identity_(std::move(identity)),
        witness_(std::move(witness)) {}
  const std::string& identity() const { return identity_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string identity_;
  std::string witness_;
};

/// Outcome of one verification: pass, or fail with a deterministic witness
/// (first counterexample in scan order).
struct CheckResult {
  bool pass = true;
  std::string witness;

  static CheckResult passed() { return {}; }
  static CheckResult failed(std::string w) { return {false, std::move(w)}; }
};

/// The base-vertex matrices of the graph: adjacency split into lowering and
/// raising parts, the dual adjacency matrix, and the dual idempotents.
class TerwilligerContext {
 public:
  const FullBipartiteGraph& graph() const { return graph_; }
  int D() const { return graph_.space.D; }
  int n() const { return graph_.space.n; }
  std::size_t order() const { return graph_.space.vertex_count; }

  /// sqrt(n-1) = scale * sqrt(radicand) with radicand squarefree.
  std::int64_t scale() const { return scale_; }
  std::int64_t radicand() const { return radicand_; }
  QuadScalar sqrt_n_minus_1() const;

  const ExactMatrix& A() const { return A_; }
  const ExactMatrix& L() const { return L_; }
  const ExactMatrix& R() const { return R_; }
  const DiagMatrix& Astar() const { return Astar_; }
  const DiagMatrix& dual_idempotent(int i) const { return dual_idem_[static_cast<std::size_t>(i)]; }
  /// theta*_i = D(n-1) - n i, as a plain integer.
  std::int64_t theta_star(int i) const { return static_cast<std::int64_t>(D()) * (n() - 1) - static_cast<std::int64_t>(n()) * i; }

  const IntMatrix& L_int() const { return L_int_; }
  const IntMatrix& R_int() const { return R_int_; }
  const IntMatrix& A_int() const { return A_int_; }

  friend TerwilligerContext build_context(FullBipartiteGraph g);

 private:
  TerwilligerContext(FullBipartiteGraph g);

  FullBipartiteGraph graph_;
  std::int64_t scale_ = 1;
  std::int64_t radicand_ = 1;
  IntMatrix L_int_, R_int_, A_int_;
  ExactMatrix A_, L_, R_;
  DiagMatrix Astar_;
  std::vector<DiagMatrix> dual_idem_;
};

/// Builds the context and verifies its construction invariants (partition
/// sizes, A = L + R, R = L^T, dual idempotent algebra, bipartiteness,
/// connectivity, geodesic distances). Throws VerificationError on violation.
TerwilligerContext build_context(FullBipartiteGraph g);

/// E*_i A E*_j = 0 whenever |i - j| != 1, and nonzero whenever |i - j| = 1
/// (both classes nonempty).
CheckResult verify_dual_idempotent_blocks(const TerwilligerContext& ctx);

/// -1/2 R L^2 + L R L - 1/2 L^2 R = (n-1) L, by exact matrix computation.
CheckResult verify_uniform(const TerwilligerContext& ctx);

/// A^3 A* - A* A^3 + 3(A A* A^2 - A^2 A* A) = 4(n-1)(A A* - A* A), by exact
/// matrix computation, plus the zero pattern of both sides over pair distance.
CheckResult verify_tridiagonal(const TerwilligerContext& ctx);

/// The same identity re-derived pair by pair from walk counts and the
/// theta*_i values, entirely in integer arithmetic.
CheckResult verify_tridiagonal_entrywise(const TerwilligerContext& ctx);

/// Number of walks from y to z whose step sequence matches shape (symbols
/// 'l' = lowering, 'r' = raising, 'f' = flat), computed both as a matrix
/// product entry and by explicit enumeration. Throws VerificationError if the
/// two routes disagree.
std::int64_t shape_walk_count(const TerwilligerContext& ctx, std::string_view shape,
                              std::size_t y, std::size_t z);

/// Count matrix for a shape: entry (z, y) counts shape-walks from y to z.
IntMatrix shape_count_matrix(const TerwilligerContext& ctx, std::string_view shape);
IntMatrix shape_count_matrix_enumerated(const TerwilligerContext& ctx, std::string_view shape);

/// Both routes compared on every entry for every shape over {l, r, f} of
/// length 1..max_len.
CheckResult verify_walk_counts(const TerwilligerContext& ctx, int max_len);

}  // namespace qham
