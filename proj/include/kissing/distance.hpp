#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kissing/geometry.hpp"
#include "kissing/rational.hpp"

namespace kissing {

/**
 * Checkable proof that conv(VP) and conv(VQ) are at squared distance distSq.
 *
 * p and q are written as strictly positive combinations of affinely
 * independent vertex subsets; optimality follows from
 * (u - p).(p - q) >= 0 for every u in VP and (v - q).(q - p) >= 0 for every
 * v in VQ.
 */
struct DistanceCertificate {
  RationalVector p;
  RationalVector q;
  std::vector<std::size_t> activeP;  // sorted indices into VP
  std::vector<std::size_t> activeQ;  // sorted indices into VQ
  std::vector<Rational> lambdaP;
  std::vector<Rational> lambdaQ;
  Rational distSq;
};

struct DistanceResult {
  Rational distSq;
  DistanceCertificate certificate;
};

/// Cap on |VP| + |VQ| for exhaustive active-subset enumeration.
inline constexpr std::size_t kEnumerationVertexCap = 14;

/**
 * Exact squared distance between conv(VP) and conv(VQ).
 *
 * Runs Wolfe's min-norm point algorithm on the Minkowski difference
 * {u - v}. When the optimal faces are small enough, the reported
 * certificate is the one with lexicographically smallest
 * (activeP, activeQ) among certificates whose supports have jointly
 * independent edge directions. Intersecting hulls give 0 and a common point.
 */
DistanceResult min_distance_sq(std::span<const RationalVector> vp, std::span<const RationalVector> vq);
DistanceResult min_distance_sq(std::span<const LatticePoint> vp, std::span<const LatticePoint> vq);

/**
 * Independent oracle: minimum over all pairs of affinely independent
 * subsets whose joint affine-hull closest points have nonnegative
 * barycentric coordinates. Exponential; capped at kEnumerationVertexCap.
 */
Rational enumerate_distance_sq(std::span<const RationalVector> vp, std::span<const RationalVector> vq);

struct CertificateCheck {
  bool ok = true;
  std::string violation;  // empty when ok
  explicit operator bool() const noexcept { return ok; }
};

CertificateCheck verify_certificate(const DistanceCertificate& cert,
                                    std::span<const RationalVector> vp,
                                    std::span<const RationalVector> vq);

/// Raised when w0 lies in span(W), making the normal vector a vanish.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// w0, the independent family W, its Gram matrix M, b_i = w0.w_i, and
/// a = det(M) w0 - sum_i det(M_i) w_i, where M_i has column i replaced by b.
struct CramerSystem {
  RationalVector w0;
  std::vector<RationalVector> W;
  RationalMatrix M;
  RationalVector b;
  RationalVector a;
};

/// Builds the system from w0 and W. Throws PreconditionError if W is
/// linearly dependent.
CramerSystem make_cramer_system(RationalVector w0, std::vector<RationalVector> W);

/**
 * Builds the system for a certificate: w0 = u0 - v0 and W a greedy
 * independent subfamily of the edge vectors of activeP and activeQ.
 */
CramerSystem cramer_system_from_certificate(const DistanceCertificate& cert,
                                            std::span<const RationalVector> vp,
                                            std::span<const RationalVector> vq);

/// (w0.a)^2 / (a.a). Throws DegenerateError when a = 0.
Rational cramer_distance_sq(const CramerSystem& sys);

struct FaceDistance {
  Rational distSq;
  Face face;
};

/// Facial distance: min over proper faces F of d(F, conv(V \ F)), squared.
FaceDistance facial_distance(std::span<const RationalVector> vertices,
                             std::size_t vertex_cap = kFaceVertexCap);
FaceDistance facial_distance(const LatticePolytope& p, std::size_t vertex_cap = kFaceVertexCap);

/// Vertex-facet distance: min over facets F of d(aff F, conv(V \ F)), squared.
FaceDistance vertex_facet_distance(std::span<const RationalVector> vertices,
                                   std::size_t vertex_cap = kFaceVertexCap);
FaceDistance vertex_facet_distance(const LatticePolytope& p, std::size_t vertex_cap = kFaceVertexCap);

/// Squared distance from x to aff(points).
Rational affine_hull_distance_sq(const RationalVector& x, std::span<const RationalVector> points);

}  // namespace kissing
