#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing {

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Exact determinant.
 *
 * Integer-valued input goes through fraction-free (Bareiss) elimination, so
 * every intermediate stays an integer minor. Other input uses rational
 * Gaussian elimination, pivoting on the entry with the largest numerator.
 * The 0x0 determinant is 1.
 */
Rational det(const RationalMatrix& m);

/// Bareiss determinant of an integer matrix given row-major.
Integer det_bareiss(std::vector<Integer> a, std::size_t n);

/// Solves M beta = b with beta_i = det(M_i) / det(M).
RationalVector solve_cramer(const RationalMatrix& m, const RationalVector& b);

/// Pairwise dot products. All vectors must share one dimension.
RationalMatrix gram(std::span<const RationalVector> w);

std::size_t rank(const RationalMatrix& m);

/// Rank of a family of vectors (treated as columns).
std::size_t rank(std::span<const RationalVector> vectors);

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// input order.
std::vector<std::size_t> independent_subset(std::span<const RationalVector> vectors);

/// Unique solution of A x = b, or nullopt when the system is inconsistent
/// or underdetermined. A may be rectangular.
std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b);

/// A nonzero x with A x = 0, if one exists.
std::optional<RationalVector> kernel_vector(const RationalMatrix& a);

}  // namespace kissing
