#include "qham/qnum.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qham {

RadicandParts normalize_radicand(std::int64_t k) {
  if (k < 1) throw InvalidOperandError("normalize_radicand: radicand must be >= 1");
  std::int64_t s = 1;
  std::int64_t m = k;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  }
  return {s, m};
}

QuadScalar::QuadScalar(Rational a, Rational b, std::int64_t m)
    : a_(std::move(a)), b_(std::move(b)), m_(m) {
  a_.canonicalize();
  b_.canonicalize();
  if (m_ < 1) throw InvalidOperandError("QuadScalar: radicand must be >= 1");
  if (normalize_radicand(m_).radicand != m_)
    throw InvalidOperandError("QuadScalar: radicand " + std::to_string(m_) + " is not squarefree");
  fold_if_rational();
}

QuadScalar QuadScalar::sqrt_of(std::int64_t k) {
  auto [s, m] = normalize_radicand(k);
  QuadScalar r;
  r.b_ = s;
  r.m_ = m;
  r.fold_if_rational();
  return r;
}

void QuadScalar::fold_if_rational() {
  if (m_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

std::int64_t QuadScalar::joint_radicand(const QuadScalar& x, const QuadScalar& y) {
  if (x.m_ == y.m_) return x.m_;
  if (sgn(x.b_) == 0) return y.m_;
  if (sgn(y.b_) == 0) return x.m_;
  throw RadicandMismatchError("QuadScalar: mixed radicands " + std::to_string(x.m_) + " and " +
                              std::to_string(y.m_));
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  m_ = joint_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  m_ = joint_radicand(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  m_ = joint_radicand(*this, o);
  Rational a = a_ * o.a_ + m_ * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw InvalidOperandError("QuadScalar: inverse of zero");
  // 1/(a + b*sqrt(m)) = (a - b*sqrt(m)) / (a^2 - m b^2); the norm cannot vanish
  // for nonzero values since m is squarefree.
  Rational norm = a_ * a_ - m_ * b_ * b_;
  QuadScalar r;
  r.m_ = m_;
  r.a_ = a_ / norm;
  r.b_ = -b_ / norm;
  r.fold_if_rational();
  return r;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  if (o.is_zero()) throw InvalidOperandError("QuadScalar: division by zero");
  return *this *= o.inverse();
}

QuadScalar QuadScalar::operator-() const {
  QuadScalar r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

void QuadScalar::add_mul(const QuadScalar& c, const QuadScalar& y) {
  std::int64_t m = joint_radicand(c, y);
  if (sgn(c.b_) == 0) {
    if (sgn(c.a_) == 0) return;
    m_ = joint_radicand(*this, y);
    a_ += c.a_ * y.a_;
    b_ += c.a_ * y.b_;
    return;
  }
  QuadScalar t;
  t.m_ = m;
  t.a_ = c.a_ * y.a_ + m * c.b_ * y.b_;
  t.b_ = c.a_ * y.b_ + c.b_ * y.a_;
  *this += t;
}

void QuadScalar::add_mul_int(const QuadScalar& c, std::int64_t v) {
  if (v == 0 || c.is_zero()) return;
  m_ = joint_radicand(*this, c);
  a_ += c.a_ * v;
  b_ += c.b_ * v;
}

double QuadScalar::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(m_));
}

bool operator==(const QuadScalar& x, const QuadScalar& y) {
  if (x.a_ != y.a_) return false;
  if (sgn(x.b_) == 0 && sgn(y.b_) == 0) return true;
  return x.m_ == y.m_ && x.b_ == y.b_;
}

std::string QuadScalar::to_string() const {
  std::ostringstream os;
  os << a_.get_str() << " + " << b_.get_str() << "*sqrt(" << m_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& s) { return os << s.to_string(); }

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_rational(std::string_view s, std::string_view whole) {
  s = strip(s);
  if (s.empty()) throw ParseError("QuadScalar: empty rational in \"" + std::string(whole) + "\"");
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '+' || c == '-') && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw ParseError("QuadScalar: bad rational \"" + std::string(s) + "\"");
  }
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0)
    throw ParseError("QuadScalar: bad rational \"" + std::string(s) + "\"");
  if (sgn(q.get_den()) == 0)
    throw ParseError("QuadScalar: zero denominator in \"" + std::string(s) + "\"");
  q.canonicalize();
  return q;
}

// One additive term: either "R" or "R*sqrt(M)" or "sqrt(M)".
struct Term {
  Rational coeff;
  std::int64_t radicand = 1;  // 1 means pure rational term
  bool radical = false;
};

Term parse_term(std::string_view s, std::string_view whole) {
  s = strip(s);
  Term t;
  auto star = s.find("sqrt");
  if (star == std::string_view::npos) {
    t.coeff = parse_rational(s, whole);
    return t;
  }
  std::string_view head = strip(s.substr(0, star));
  if (!head.empty()) {
    if (head.back() != '*')
      throw ParseError("QuadScalar: expected '*' before sqrt in \"" + std::string(whole) + "\"");
    head.remove_suffix(1);
    head = strip(head);
    t.coeff = head.empty() ? Rational(1) : parse_rational(head, whole);
  } else {
    t.coeff = 1;
  }
  std::string_view tail = strip(s.substr(star + 4));
  if (tail.size() < 3 || tail.front() != '(' || tail.back() != ')')
    throw ParseError("QuadScalar: malformed sqrt(...) in \"" + std::string(whole) + "\"");
  std::string_view arg = strip(tail.substr(1, tail.size() - 2));
  std::int64_t k = 0;
  try {
    std::size_t pos = 0;
    k = std::stoll(std::string(arg), &pos);
    if (pos != arg.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("QuadScalar: bad radicand \"" + std::string(arg) + "\"");
  }
  if (k < 1) throw ParseError("QuadScalar: radicand must be >= 1 in \"" + std::string(whole) + "\"");
  auto [sc, m] = normalize_radicand(k);
  t.coeff *= sc;
  t.radicand = m;
  t.radical = true;
  return t;
}

}  // namespace

QuadScalar QuadScalar::parse(std::string_view text) {
  std::string_view s = strip(text);
  if (s.empty()) throw ParseError("QuadScalar: empty input");
  // Split into additive terms at top-level '+'/'-'. A sign with no term body
  // before it (start of input, or right after another separator) negates the
  // upcoming term instead of splitting, so "a + -b*sqrt(m)" parses.
  std::vector<std::pair<std::string_view, int>> parts;  // text, sign
  std::size_t start = 0;
  int sign = +1;
  int depth = 0;
  auto blank_since_start = [&](std::size_t upto) {
    for (std::size_t j = start; j < upto; ++j)
      if (!std::isspace(static_cast<unsigned char>(s[j]))) return false;
    return true;
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && depth == 0) {
      if (blank_since_start(i)) {
        if (c == '-') sign = -sign;
        start = i + 1;
        continue;
      }
      std::size_t p = i;
      while (p > start && std::isspace(static_cast<unsigned char>(s[p - 1]))) --p;
      char prev = s[p - 1];
      if (prev == '*' || prev == '/') continue;  // sign inside a factor
      parts.emplace_back(s.substr(start, i - start), sign);
      sign = (c == '-') ? -1 : +1;
      start = i + 1;
    }
  }
  if (blank_since_start(s.size()))
    throw ParseError("QuadScalar: dangling sign in \"" + std::string(text) + "\"");
  parts.emplace_back(s.substr(start), sign);
  if (parts.size() > 2) throw ParseError("QuadScalar: too many terms in \"" + std::string(text) + "\"");

  Rational a = 0, b = 0;
  std::int64_t m = 1;
  bool saw_rational = false, saw_radical = false;
  for (auto& [part, sg] : parts) {
    Term t = parse_term(part, text);
    if (sg < 0) t.coeff = -t.coeff;
    if (t.radical && t.radicand != 1) {
      if (saw_radical && t.radicand != m)
        throw ParseError("QuadScalar: mixed radicands in \"" + std::string(text) + "\"");
      if (saw_radical)
        b += t.coeff;
      else
        b = t.coeff;
      m = t.radicand;
      saw_radical = true;
    } else if (t.radical) {
      a += t.coeff;  // sqrt of a perfect square folds into the rational part
    } else {
      if (saw_rational)
        throw ParseError("QuadScalar: repeated rational term in \"" + std::string(text) + "\"");
      a = t.coeff;
      saw_rational = true;
    }
  }
  return QuadScalar(std::move(a), std::move(b), m);
}

QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

QuadPolynomial::QuadPolynomial(std::vector<QuadScalar> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

QuadPolynomial QuadPolynomial::constant(QuadScalar c) {
  QuadPolynomial p;
  p.coeffs_.push_back(std::move(c));
  p.trim();
  return p;
}

QuadPolynomial QuadPolynomial::monomial(QuadScalar c, std::size_t degree) {
  QuadPolynomial p;
  if (!c.is_zero()) {
    p.coeffs_.assign(degree + 1, QuadScalar());
    p.coeffs_[degree] = std::move(c);
  }
  return p;
}

void QuadPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

QuadScalar QuadPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : QuadScalar();
}

const QuadScalar& QuadPolynomial::leading_coefficient() const {
  if (coeffs_.empty()) throw InvalidOperandError("QuadPolynomial: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

QuadScalar QuadPolynomial::eval(const QuadScalar& t) const {
  QuadScalar acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= t;
    acc += coeffs_[i];
  }
  return acc;
}

QuadPolynomial& QuadPolynomial::operator+=(const QuadPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

QuadPolynomial& QuadPolynomial::operator-=(const QuadPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

QuadPolynomial QuadPolynomial::operator*(const QuadPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  QuadPolynomial r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, QuadScalar());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j].add_mul(coeffs_[i], o.coeffs_[j]);
  }
  r.trim();
  return r;
}

QuadPolynomial QuadPolynomial::operator*(const QuadScalar& c) const {
  QuadPolynomial r(*this);
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

QuadPolynomial QuadPolynomial::shift_scale(const QuadScalar& alpha, const QuadScalar& beta) const {
  if (alpha.is_zero()) throw InvalidOperandError("QuadPolynomial: shift_scale with zero scale");
  // Horner in the substituted variable: q = (...(c_n * u + c_{n-1}) * u + ...)
  // with u = alpha*t + beta.
  QuadPolynomial u;
  u.coeffs_ = {beta, alpha};
  u.trim();
  QuadPolynomial q;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    q = q * u;
    q += QuadPolynomial::constant(coeffs_[i]);
  }
  return q;
}

std::string QuadPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[i].to_string() << ")";
    if (i == 1)
      os << "*t";
    else if (i > 1)
      os << "*t^" << i;
    first = false;
  }
  return os.str();
}

QuadPolynomial operator+(QuadPolynomial p, const QuadPolynomial& q) { return p += q; }
QuadPolynomial operator-(QuadPolynomial p, const QuadPolynomial& q) { return p -= q; }

}  // namespace qham
