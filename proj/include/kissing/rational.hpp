#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace kissing {

using Integer = mpz_class;

/// Raised when vector/matrix shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a configured enumeration or size cap.
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Column is 1-based, position is relative to the
/// string handed to the parser.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::invalid_argument(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/**
 * Exact rational number, always stored in lowest terms with a positive
 * denominator.
 *
 * Text form is "num/den", or just "num" when the denominator is 1.
 */
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}                    // NOLINT(google-explicit-constructor)
  Rational(long v) : v_(v) {}                   // NOLINT(google-explicit-constructor)
  Rational(long long v) : v_(static_cast<long>(v)) {}  // NOLINT
  Rational(const Integer& v) : v_(v) {}         // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "num" or "num/den" (optional leading '-'). No whitespace.
  static Rational parse(std::string_view text);

  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }
  const mpq_class& raw() const noexcept { return v_; }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& x);
/// x^e for e >= 0.
Rational pow(const Rational& x, unsigned e);
Integer pow(const Integer& x, unsigned e);

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// Coordinate vector over the rationals.
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t dim) : coords_(dim) {}
  RationalVector(std::initializer_list<Rational> init) : coords_(init) {}
  explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  template <class Int>
    requires std::is_integral_v<Int>
  static RationalVector from_integers(std::span<const Int> values) {
    RationalVector v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) v[i] = Rational(static_cast<long>(values[i]));
    return v;
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const;
  Rational norm_sq() const { return dot(*this); }
  Rational dot(const RationalVector& o) const;
  std::string to_string() const;

  RationalVector& operator+=(const RationalVector& o);
  RationalVector& operator-=(const RationalVector& o);
  RationalVector& operator*=(const Rational& s);

  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator*(RationalVector a, const Rational& s) { return a *= s; }
  friend RationalVector operator*(const Rational& s, RationalVector a) { return a *= s; }
  friend bool operator==(const RationalVector&, const RationalVector&) = default;
  friend auto operator<=>(const RationalVector& a, const RationalVector& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  std::vector<Rational> coords_;
};

Rational dot(const RationalVector& a, const RationalVector& b);

/// Row-major dense matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors.
  static RationalMatrix from_columns(std::span<const RationalVector> cols, std::size_t dim);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RationalVector column(std::size_t j) const;
  RationalMatrix transpose() const;
  RationalVector operator*(const RationalVector& x) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace kissing
