#include "qham/matrix.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qham {

IntMatrix IntMatrix::identity(std::size_t order) {
  IntMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.at(i, i) = 1;
  return m;
}

namespace {

std::int64_t narrow_checked(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error(std::string(what) + ": int64 overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (order_ != o.order_) throw InvalidOperandError("IntMatrix: order mismatch");
  IntMatrix r(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t k = 0; k < order_; ++k) {
      std::int64_t x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < order_; ++j) {
        std::int64_t y = o.at(k, j);
        if (y == 0) continue;
        __int128 acc = static_cast<__int128>(r.at(i, j)) + static_cast<__int128>(x) * y;
        r.at(i, j) = narrow_checked(acc, "IntMatrix multiply");
      }
    }
  }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (order_ != o.order_) throw InvalidOperandError("IntMatrix: order mismatch");
  IntMatrix r(order_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = narrow_checked(static_cast<__int128>(e_[i]) + o.e_[i], "IntMatrix add");
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (order_ != o.order_) throw InvalidOperandError("IntMatrix: order mismatch");
  IntMatrix r(order_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = narrow_checked(static_cast<__int128>(e_[i]) - o.e_[i], "IntMatrix subtract");
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::int64_t IntMatrix::trace() const {
  __int128 t = 0;
  for (std::size_t i = 0; i < order_; ++i) t += at(i, i);
  return narrow_checked(t, "IntMatrix trace");
}

bool IntMatrix::is_zero() const {
  for (auto v : e_)
    if (v != 0) return false;
  return true;
}

QuadScalar DiagMatrix::trace() const {
  QuadScalar t;
  for (const auto& v : d_) t += v;
  return t;
}

ExactMatrix ExactMatrix::identity(std::size_t order) {
  ExactMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.at(i, i) = QuadScalar(1);
  return m;
}

ExactMatrix ExactMatrix::from_int(const IntMatrix& m) {
  ExactMatrix r(m.order());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (m.at(i, j) != 0) r.at(i, j) = QuadScalar(static_cast<long>(m.at(i, j)));
  return r;
}

ExactMatrix ExactMatrix::from_diag(const DiagMatrix& d) {
  ExactMatrix r(d.order());
  for (std::size_t i = 0; i < d.order(); ++i) r.at(i, i) = d.at(i);
  return r;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (order_ != o.order_) throw InvalidOperandError("ExactMatrix: order mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (order_ != o.order_) throw InvalidOperandError("ExactMatrix: order mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

ExactMatrix& ExactMatrix::add_scaled(const ExactMatrix& o, const QuadScalar& c) {
  if (order_ != o.order_) throw InvalidOperandError("ExactMatrix: order mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!o.e_[i].is_zero()) e_[i].add_mul(c, o.e_[i]);
  return *this;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (order_ != o.order_) throw InvalidOperandError("ExactMatrix: order mismatch");
  ExactMatrix r(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t k = 0; k < order_; ++k) {
      const QuadScalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < order_; ++j) {
        const QuadScalar& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j).add_mul(x, y);
      }
    }
  }
  return r;
}

ExactMatrix ExactMatrix::scaled(const QuadScalar& c) const {
  ExactMatrix r(order_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!e_[i].is_zero()) {
      r.e_[i] = e_[i];
      r.e_[i] *= c;
    }
  return r;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) r.at(j, i) = at(i, j);
  return r;
}

QuadScalar ExactMatrix::trace() const {
  QuadScalar t;
  for (std::size_t i = 0; i < order_; ++i) t += at(i, i);
  return t;
}

bool ExactMatrix::is_zero() const { return !first_nonzero().has_value(); }

std::optional<std::pair<std::size_t, std::size_t>> ExactMatrix::first_nonzero() const {
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j)
      if (!at(i, j).is_zero()) return std::make_pair(i, j);
  return std::nullopt;
}

bool ExactMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i + 1; j < order_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::size_t ExactMatrix::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& v : e_)
    if (!v.is_zero()) ++n;
  return n;
}

std::vector<QuadScalar> ExactMatrix::apply(const std::vector<QuadScalar>& v) const {
  if (v.size() != order_) throw InvalidOperandError("ExactMatrix: vector length mismatch");
  std::vector<QuadScalar> r(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) {
      const QuadScalar& x = at(i, j);
      if (!x.is_zero() && !v[j].is_zero()) r[i].add_mul(x, v[j]);
    }
  return r;
}

void ExactMatrix::dump(std::ostream& os) const {
  os << "order " << order_ << "\n";
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < order_; ++j) {
      if (j) os << "  ";
      os << at(i, j).to_string();
    }
    os << "\n";
  }
}

ExactMatrix ExactMatrix::read(std::istream& is) {
  std::string kw;
  std::size_t order = 0;
  if (!(is >> kw >> order) || kw != "order")
    throw ParseError("ExactMatrix: expected 'order m' header");
  ExactMatrix r(order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) {
      std::string t1, t2, t3;
      if (!(is >> t1 >> t2 >> t3)) throw ParseError("ExactMatrix: truncated dump");
      r.at(i, j) = QuadScalar::parse(t1 + " " + t2 + " " + t3);
    }
  return r;
}

ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) { return x += y; }
ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) { return x -= y; }

ExactMatrix operator*(const DiagMatrix& d, const ExactMatrix& m) {
  if (d.order() != m.order()) throw InvalidOperandError("DiagMatrix: order mismatch");
  ExactMatrix r(m.order());
  for (std::size_t i = 0; i < m.order(); ++i) {
    if (d.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < m.order(); ++j)
      if (!m.at(i, j).is_zero()) {
        r.at(i, j) = d.at(i);
        r.at(i, j) *= m.at(i, j);
      }
  }
  return r;
}

ExactMatrix operator*(const ExactMatrix& m, const DiagMatrix& d) {
  if (d.order() != m.order()) throw InvalidOperandError("DiagMatrix: order mismatch");
  ExactMatrix r(m.order());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (!m.at(i, j).is_zero() && !d.at(j).is_zero()) {
        r.at(i, j) = m.at(i, j);
        r.at(i, j) *= d.at(j);
      }
  return r;
}

bool RowBasis::insert(std::vector<QuadScalar> v) {
  v = reduce(std::move(v));
  std::size_t pivot = dim_;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!v[j].is_zero()) {
      pivot = j;
      break;
    }
  if (pivot == dim_) return false;
  QuadScalar inv = v[pivot].inverse();
  for (auto& x : v) x *= inv;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const QuadScalar& c = rows_[r][pivot];
    if (c.is_zero()) continue;
    QuadScalar f = -c;
    for (std::size_t j = 0; j < dim_; ++j) rows_[r][j].add_mul(f, v[j]);
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, pivot);
  return true;
}

std::vector<QuadScalar> RowBasis::reduce(std::vector<QuadScalar> v) const {
  if (v.size() != dim_) throw InvalidOperandError("RowBasis: vector length mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const QuadScalar& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    QuadScalar f = -c;
    for (std::size_t j = pivots_[r]; j < dim_; ++j) v[j].add_mul(f, rows_[r][j]);
  }
  return v;
}

bool RowBasis::contains(const std::vector<QuadScalar>& v) const {
  auto res = reduce(v);
  for (const auto& x : res)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<QuadScalar> solve_linear(std::vector<std::vector<QuadScalar>> rows,
                                     std::vector<QuadScalar> rhs) {
  const std::size_t n = rows.size();
  if (rhs.size() != n) throw InvalidOperandError("solve_linear: shape mismatch");
  for (const auto& r : rows)
    if (r.size() != n) throw InvalidOperandError("solve_linear: not square");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && rows[p][col].is_zero()) ++p;
    if (p == n) throw InvalidOperandError("solve_linear: singular matrix");
    std::swap(rows[p], rows[col]);
    std::swap(rhs[p], rhs[col]);
    QuadScalar inv = rows[col][col].inverse();
    for (auto& x : rows[col]) x *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      QuadScalar c = rows[r][col];
      if (c.is_zero()) continue;
      QuadScalar f = -c;
      for (std::size_t j = col; j < n; ++j) rows[r][j].add_mul(f, rows[col][j]);
      rhs[r].add_mul(f, rhs[col]);
    }
  }
  return rhs;
}

QuadScalar det_exact(ExactMatrix m) {
  const std::size_t n = m.order();
  QuadScalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m.at(p, col).is_zero()) ++p;
    if (p == n) return QuadScalar();
    if (p != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    QuadScalar inv = m.at(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m.at(r, col).is_zero()) continue;
      QuadScalar f = m.at(r, col);
      f *= inv;
      f = -f;
      for (std::size_t j = col; j < n; ++j) m.at(r, j).add_mul(f, m.at(col, j));
    }
  }
  return det;
}

}  // namespace qham
