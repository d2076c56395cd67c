#include "kissing/bounds.hpp"

#include <cmath>
#include <cstdio>

namespace kissing {

namespace {

// ceil(log2(n + 1)) is the bit length of n.
std::int64_t bit_length(const Integer& n) {
  if (n == 0) return 0;
  return static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

Integer ipow(std::int64_t base, std::int64_t exp) {
  return pow(Integer(static_cast<long>(base)), static_cast<unsigned>(exp));
}

Rational power_of_two_bound(std::int64_t exponent, std::int64_t cap_bits) {
  if (exponent > cap_bits)
    throw ScopeError("bound exponent 2^" + std::to_string(exponent) + " exceeds the cap of " +
                     std::to_string(cap_bits) + " bits");
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return Rational(Integer(64), den);
}

}  // namespace

std::int64_t size_rational(const Rational& x) {
  return 1 + bit_length(abs(x.numerator())) + bit_length(x.denominator());
}

std::int64_t size_vector(const RationalVector& a) {
  std::int64_t s = static_cast<std::int64_t>(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) s += size_rational(a[i]);
  return s;
}

std::int64_t size_matrix(const RationalMatrix& m) {
  std::int64_t s = static_cast<std::int64_t>(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += size_rational(m(i, j));
  return s;
}

EncodingReport vertex_complexity(std::span<const RationalVector> vertices) {
  if (vertices.empty()) throw PreconditionError("vertex_complexity of an empty polytope");
  const auto d = static_cast<std::int64_t>(vertices.front().dim());
  EncodingReport r;
  r.nu = d;
  for (const auto& v : vertices) {
    if (static_cast<std::int64_t>(v.dim()) != d) throw DimensionError("vertex_complexity: mixed dimensions");
    r.sizeDetails.push_back(size_vector(v));
    r.nu = std::max(r.nu, r.sizeDetails.back());
  }
  r.phiUpper = 4 * d * d * r.nu;
  return r;
}

EncodingReport vertex_complexity(const LatticePolytope& p) {
  const auto rat = p.rational_vertices();
  return vertex_complexity(rat);
}

LatticeLowerBounds lower_bound_lattice_sq(int d, std::int64_t k) {
  if (d < 1 || k < 1) throw PreconditionError("lower_bound_lattice_sq needs d >= 1 and k >= 1");
  LatticeLowerBounds b;
  b.hadamard = Rational(Integer(1), ipow(k, 4 * d - 2) * ipow(d, 3 * d + 2));
  b.simple = Rational(Integer(1), ipow(k * d, 4 * d));
  return b;
}

Rational lower_bound_rational_nu_sq(int d, std::int64_t nu, std::int64_t cap_bits) {
  if (d < 1 || nu < d) throw PreconditionError("lower_bound_rational_nu_sq needs nu >= d >= 1");
  const std::int64_t t = 2 * static_cast<std::int64_t>(d);
  return power_of_two_bound(8 * nu * t * t * t * t, cap_bits);
}

Rational lower_bound_rational_phi_sq(int d, std::int64_t phi, std::int64_t cap_bits) {
  if (d < 1 || phi < d) throw PreconditionError("lower_bound_rational_phi_sq needs phi >= d >= 1");
  const std::int64_t t = 2 * static_cast<std::int64_t>(d);
  return power_of_two_bound(8 * phi * t * t * t * t * t * t, cap_bits);
}

Rational upper_bound_special_sq(int d, std::int64_t k) {
  if (d < 2) throw PreconditionError("upper_bound_special_sq needs d >= 2");
  if (k < 1) throw PreconditionError("upper_bound_special_sq needs k >= 1");
  if (k == 1) return Rational(Integer(1), Integer(static_cast<long>(d) * (d - 1)));
  return Rational(Integer(1), ipow(d - 1, 2) * ipow(k, 2));
}

ConstructionBound upper_bound_construction_sq(int sigma, int delta, std::int64_t k) {
  if (delta < 4) throw PreconditionError("construction bound needs delta >= 4");
  if (sigma < 1 || k < 1) throw PreconditionError("construction bound needs sigma >= 1 and k >= 1");
  return {Rational(Integer(static_cast<long>(delta) * sigma), ipow(k * (delta - 1), 2 * sigma)),
          delta * (sigma + 1)};
}

double asymptotic_bound(int d, std::int64_t k, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw PreconditionError("asymptotic bound needs 0 < alpha < 1");
  const double da = std::pow(static_cast<double>(d), alpha);
  return 1.0 / (std::pow(static_cast<double>(k), da) * std::pow(static_cast<double>(d), (1 - alpha) * da));
}

std::string asymptotic_bound_display(int d, std::int64_t k, double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", asymptotic_bound(d, k, alpha));
  return std::string(buf) + " (approximate)";
}

BoundReport bound_report(int d, std::int64_t k, std::optional<std::pair<int, int>> sigma_delta) {
  BoundReport r;
  r.d = d;
  r.k = k;
  const auto lower = lower_bound_lattice_sq(d, k);
  r.lowerSqHadamard = lower.hadamard;
  r.lowerSqSimple = lower.simple;
  if (d >= 2) {
    if (k == 1)
      r.upperSqDiagonal = upper_bound_special_sq(d, k);
    else
      r.upperSqNearCorner = upper_bound_special_sq(d, k);
  }
  if (sigma_delta) {
    auto [sigma, delta] = *sigma_delta;
    auto c = upper_bound_construction_sq(sigma, delta, k);
    if (c.d != d)
      throw PreconditionError("sigma=" + std::to_string(sigma) + ", delta=" + std::to_string(delta) +
                              " gives d=" + std::to_string(c.d) + ", not " + std::to_string(d));
    r.upperSqConstruction = c.sq;
    r.sigmaDelta = sigma_delta;
  } else {
    for (int sigma = 1; 4 * (sigma + 1) <= d; ++sigma) {
      if (d % (sigma + 1) != 0) continue;
      const int delta = d / (sigma + 1);
      auto c = upper_bound_construction_sq(sigma, delta, k);
      if (!r.upperSqConstruction || c.sq < *r.upperSqConstruction) {
        r.upperSqConstruction = c.sq;
        r.sigmaDelta = std::pair{sigma, delta};
      }
    }
  }
  return r;
}

}  // namespace kissing
