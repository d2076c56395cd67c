#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kissing/geometry.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/// Binary encoding length 1 + ceil(log2(|num|+1)) + ceil(log2(den+1)).
std::int64_t size_rational(const Rational& x);
/// dim + sum of entry sizes.
std::int64_t size_vector(const RationalVector& a);
/// rows * cols + sum of entry sizes.
std::int64_t size_matrix(const RationalMatrix& m);

struct EncodingReport {
  std::int64_t nu = 0;
  std::int64_t phiUpper = 0;  // 4 d^2 nu
  std::vector<std::int64_t> sizeDetails;  // size_vector of each vertex, in input order
};

EncodingReport vertex_complexity(std::span<const RationalVector> vertices);
EncodingReport vertex_complexity(const LatticePolytope& p);

struct LatticeLowerBounds {
  Rational hadamard;  // 1 / (k^{4d-2} d^{3d+2})
  Rational simple;    // 1 / (kd)^{4d}
};

LatticeLowerBounds lower_bound_lattice_sq(int d, std::int64_t k);

inline constexpr std::int64_t kExponentCapBits = 1'000'000;

/// 64 / 2^{8 nu (2d)^4}. Throws ScopeError if the exponent exceeds the cap.
Rational lower_bound_rational_nu_sq(int d, std::int64_t nu, std::int64_t cap_bits = kExponentCapBits);
/// 64 / 2^{8 phi (2d)^6}.
Rational lower_bound_rational_phi_sq(int d, std::int64_t phi, std::int64_t cap_bits = kExponentCapBits);

/// 1/(d(d-1)) for k = 1, 1/((d-1)^2 k^2) for k >= 2.
Rational upper_bound_special_sq(int d, std::int64_t k);

struct ConstructionBound {
  Rational sq;  // delta sigma / (k (delta - 1))^{2 sigma}
  int d;        // delta (sigma + 1)
};

ConstructionBound upper_bound_construction_sq(int sigma, int delta, std::int64_t k);

/// Floating display of 1 / (k^{d^alpha} d^{(1-alpha) d^alpha}). Not exact.
double asymptotic_bound(int d, std::int64_t k, double alpha);
std::string asymptotic_bound_display(int d, std::int64_t k, double alpha);

struct BoundReport {
  int d = 0;
  std::int64_t k = 0;
  Rational lowerSqHadamard;
  Rational lowerSqSimple;
  std::optional<Rational> upperSqDiagonal;
  std::optional<Rational> upperSqNearCorner;
  std::optional<Rational> upperSqConstruction;
  std::optional<std::pair<int, int>> sigmaDelta;
};

/**
 * All bounds applicable to (d, k). The construction bound is included when
 * (sigma, delta) is given and matches d, or otherwise when d = delta(sigma+1)
 * for some delta >= 4, sigma >= 1 (the factorization giving the smallest bound).
 */
BoundReport bound_report(int d, std::int64_t k, std::optional<std::pair<int, int>> sigma_delta = std::nullopt);

}  // namespace kissing
