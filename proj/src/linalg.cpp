#include "kissing/linalg.hpp"

#include <utility>

namespace kissing {

namespace {

struct Echelon {
  RationalMatrix m;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form. Pivots on the first nonzero entry of each column
// below the current row.
Echelon rref(RationalMatrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.m = std::move(m);
  return e;
}

bool all_integer(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

Rational det_rational(RationalMatrix m) {
  const std::size_t n = m.rows();
  Rational result = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    Integer best;
    for (std::size_t i = col; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Integer mag = m(i, col).numerator();
      if (mag < 0) mag = -mag;
      if (piv == n || mag > best) {
        piv = i;
        best = mag;
      }
    }
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      result = -result;
    }
    result *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return result;
}

}  // namespace

Integer det_bareiss(std::vector<Integer> a, std::size_t n) {
  if (a.size() != n * n) throw DimensionError("det_bareiss: buffer is not n*n");
  if (n == 0) return 1;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Rational det(const RationalMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (all_integer(m)) {
    std::vector<Integer> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).numerator();
    return Rational(det_bareiss(std::move(a), n));
  }
  return det_rational(m);
}

RationalVector solve_cramer(const RationalMatrix& m, const RationalVector& b) {
  if (!m.is_square()) throw DimensionError("Cramer solve needs a square matrix");
  if (b.dim() != m.rows()) throw DimensionError("right-hand side has wrong dimension");
  const Rational d = det(m);
  if (d.is_zero()) throw SingularityError("Cramer solve on a singular matrix");
  RationalVector beta(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    RationalMatrix mi = m;
    for (std::size_t r = 0; r < m.rows(); ++r) mi(r, i) = b[r];
    beta[i] = det(mi) / d;
  }
  return beta;
}

RationalMatrix gram(std::span<const RationalVector> w) {
  RationalMatrix g(w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].dim() != w[0].dim()) throw DimensionError("gram: vectors of mixed dimension");
    for (std::size_t j = i; j < w.size(); ++j) {
      g(i, j) = w[i].dot(w[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivot_cols.size(); }

std::size_t rank(std::span<const RationalVector> vectors) {
  if (vectors.empty()) return 0;
  return rank(RationalMatrix::from_columns(vectors, vectors[0].dim()));
}

std::vector<std::size_t> independent_subset(std::span<const RationalVector> vectors) {
  if (vectors.empty()) return {};
  // Pivot columns of the RREF of [v0 v1 ...] are exactly the greedy choice.
  return rref(RationalMatrix::from_columns(vectors, vectors[0].dim())).pivot_cols;
}

std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b) {
  if (b.dim() != a.rows()) throw DimensionError("solve_unique: right-hand side has wrong dimension");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const Echelon e = rref(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == n) return std::nullopt;  // inconsistent
  if (e.pivot_cols.size() != n) return std::nullopt;                           // free variables
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.m(i, n);
  return x;
}

std::optional<RationalVector> kernel_vector(const RationalMatrix& a) {
  const Echelon e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::size_t free_col = n;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  if (free_col == n) return std::nullopt;
  RationalVector x(n);
  x[free_col] = 1;
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = -e.m(r, free_col);
  return x;
}

}  // namespace kissing
