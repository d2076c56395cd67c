#pragma once

#include <span>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing {

/// Minimum-norm point of conv(points), written as a positive combination of
/// an affinely independent subfamily.
struct MinNormPoint {
  RationalVector x;
  std::vector<std::size_t> active;  // indices into the input, sorted
  std::vector<Rational> weights;    // > 0, sum to 1
};

/**
 * Wolfe's min-norm point algorithm in exact arithmetic.
 *
 * Major cycles add the point minimizing x.p; minor cycles move to the affine
 * minimizer of the corral, stepping back to the boundary of its hull and
 * dropping zero-weight points whenever that minimizer is not interior.
 * Ties are resolved by smallest index.
 */
MinNormPoint min_norm_point(std::span<const RationalVector> points);

/// True iff x lies in conv(points).
bool in_convex_hull(const RationalVector& x, std::span<const RationalVector> points);

}  // namespace kissing
