#include "kissing/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace kissing {

namespace {

// Parses an optionally signed decimal integer occupying all of `text`.
// `offset` is the column (0-based) of text[0] inside the original string.
Integer parse_integer(std::string_view text, std::size_t offset, bool allow_sign) {
  if (text.empty()) throw ParseError("expected digits", offset + 1);
  std::size_t i = 0;
  if (allow_sign && text[0] == '-') i = 1;
  if (i == text.size()) throw ParseError("expected digits after '-'", offset + i + 1);
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw ParseError(std::string("unexpected character '") + text[j] + "' in rational",
                       offset + j + 1);
    }
  }
  return Integer(std::string(text), 10);
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, 0, true));
  Integer num = parse_integer(text.substr(0, slash), 0, true);
  Integer den = parse_integer(text.substr(slash + 1), slash + 1, false);
  if (den == 0) throw ParseError("zero denominator", slash + 2);
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Integer pow(const Integer& x, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

Rational pow(const Rational& x, unsigned e) {
  return Rational(pow(x.numerator(), e), pow(x.denominator(), e));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

bool RationalVector::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

Rational RationalVector::dot(const RationalVector& o) const {
  if (o.dim() != dim()) throw DimensionError("dot product of vectors with different dimensions");
  mpq_class acc;
  for (std::size_t i = 0; i < coords_.size(); ++i) acc += coords_[i].raw() * o.coords_[i].raw();
  return Rational(acc);
}

Rational dot(const RationalVector& a, const RationalVector& b) { return a.dot(b); }

std::string RationalVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
  if (o.dim() != dim()) throw DimensionError("vector sum with different dimensions");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
  if (o.dim() != dim()) throw DimensionError("vector difference with different dimensions");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::span<const RationalVector> cols, std::size_t dim) {
  RationalMatrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].dim() != dim) throw DimensionError("column with wrong dimension");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RationalVector RationalMatrix::column(std::size_t j) const {
  RationalVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& x) const {
  if (x.dim() != cols_) throw DimensionError("matrix-vector product shape mismatch");
  RationalVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpq_class acc;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j).raw() * x[j].raw();
    y[i] = Rational(acc);
  }
  return y;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (o.rows_ != cols_) throw DimensionError("matrix product shape mismatch");
  RationalMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      mpq_class acc;
      for (std::size_t l = 0; l < cols_; ++l) acc += (*this)(i, l).raw() * o(l, j).raw();
      m(i, j) = Rational(acc);
    }
  return m;
}

}  // namespace kissing
