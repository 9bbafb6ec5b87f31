#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "qham/qnum.hpp"

namespace qham {

/// Dense square int64 matrix for exact walk counting. Products accumulate in
/// 128-bit and throw std::overflow_error instead of wrapping.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t order) : order_(order), e_(order * order, 0) {}
  static IntMatrix identity(std::size_t order);

  std::size_t order() const { return order_; }
  std::int64_t& at(std::size_t r, std::size_t c) { return e_[r * order_ + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return e_[r * order_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix transpose() const;
  std::int64_t trace() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.order_ == y.order_ && x.e_ == y.e_;
  }

 private:
  std::size_t order_;
  std::vector<std::int64_t> e_;
};

/// Diagonal matrix with exact scalar entries.
class DiagMatrix {
 public:
  explicit DiagMatrix(std::size_t order) : d_(order) {}
  explicit DiagMatrix(std::vector<QuadScalar> d) : d_(std::move(d)) {}

  std::size_t order() const { return d_.size(); }
  QuadScalar& at(std::size_t i) { return d_[i]; }
  const QuadScalar& at(std::size_t i) const { return d_[i]; }
  const std::vector<QuadScalar>& entries() const { return d_; }

  QuadScalar trace() const;

  friend bool operator==(const DiagMatrix& x, const DiagMatrix& y) { return x.d_ == y.d_; }

 private:
  std::vector<QuadScalar> d_;
};

/// Dense square matrix over QuadScalar. Multiplication skips zero entries, so
/// products against sparse 0/1 matrices stay near linear in the nonzero count.
class ExactMatrix {
 public:
  explicit ExactMatrix(std::size_t order) : order_(order), e_(order * order) {}
  static ExactMatrix identity(std::size_t order);
  static ExactMatrix from_int(const IntMatrix& m);
  static ExactMatrix from_diag(const DiagMatrix& d);

  std::size_t order() const { return order_; }
  QuadScalar& at(std::size_t r, std::size_t c) { return e_[r * order_ + c]; }
  const QuadScalar& at(std::size_t r, std::size_t c) const { return e_[r * order_ + c]; }

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  /// *this += c * o without materializing the scaled copy.
  ExactMatrix& add_scaled(const ExactMatrix& o, const QuadScalar& c);
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix scaled(const QuadScalar& c) const;
  ExactMatrix transpose() const;
  QuadScalar trace() const;

  bool is_zero() const;
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;
  bool is_symmetric() const;
  std::size_t nonzero_count() const;

  std::vector<QuadScalar> apply(const std::vector<QuadScalar>& v) const;

  /// Textual dump: header "order m", then m rows of m scalars in canonical
  /// 3-token form (so a row splits into exactly 3m whitespace tokens).
  void dump(std::ostream& os) const;
  static ExactMatrix read(std::istream& is);

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.order_ == y.order_ && x.e_ == y.e_;
  }

 private:
  std::size_t order_;
  std::vector<QuadScalar> e_;
};

ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y);
ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y);
ExactMatrix operator*(const DiagMatrix& d, const ExactMatrix& m);
ExactMatrix operator*(const ExactMatrix& m, const DiagMatrix& d);

/// Deterministic reduced row-echelon basis with first-nonzero-column pivoting.
class RowBasis {
 public:
  explicit RowBasis(std::size_t dim) : dim_(dim) {}

  /// Reduce v against the basis; if a nonzero residual remains, normalize it,
  /// back-substitute, insert, and return true.
  bool insert(std::vector<QuadScalar> v);
  /// Residual of v after reduction (zero vector iff v is in the span).
  std::vector<QuadScalar> reduce(std::vector<QuadScalar> v) const;
  bool contains(const std::vector<QuadScalar>& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dim_; }
  /// Rows ordered by pivot column.
  const std::vector<std::vector<QuadScalar>>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<QuadScalar>> rows_;   // reduced, pivot-sorted
  std::vector<std::size_t> pivots_;
};

/// Solve the square system (rows) * x = rhs exactly. Throws InvalidOperandError
/// when the matrix is singular.
std::vector<QuadScalar> solve_linear(std::vector<std::vector<QuadScalar>> rows,
                                     std::vector<QuadScalar> rhs);

/// Exact determinant by Gaussian elimination over the scalar field.
QuadScalar det_exact(ExactMatrix m);

}  // namespace qham
