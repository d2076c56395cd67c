#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing {

/// Integer point. Inside a (d,k) context every coordinate lies in [0, k].
struct LatticePoint {
  std::vector<std::int64_t> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  RationalVector to_rational() const;
  std::string to_string() const;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::vector<RationalVector> to_rational(std::span<const LatticePoint> points);

/**
 * Lattice polytope inside [0,k]^d, stored by its vertices only.
 *
 * Construction drops duplicates and every input point lying in the hull of
 * the remaining ones, so the stored set is exactly the extreme points.
 * Vertices are kept in lexicographic order.
 */
class LatticePolytope {
 public:
  LatticePolytope(std::vector<LatticePoint> points, std::int64_t k);

  std::size_t dim() const noexcept { return vertices_.front().dim(); }
  std::int64_t k() const noexcept { return k_; }
  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  std::vector<RationalVector> rational_vertices() const { return to_rational(vertices_); }

 private:
  std::vector<LatticePoint> vertices_;
  std::int64_t k_;
};

/// A face given by indices into the polytope's vertex list (sorted).
struct Face {
  std::vector<std::size_t> vertices;
  int dim = 0;
  bool facet = false;
  friend bool operator==(const Face&, const Face&) = default;
};

/// Dimension of the affine hull. Requires a nonempty list.
int affine_rank(std::span<const RationalVector> points);
int affine_rank(std::span<const LatticePoint> points);

bool affinely_independent(std::span<const RationalVector> points);

/**
 * Outcome of expressing x in barycentric coordinates of an affinely
 * independent family S.
 */
struct Barycentric {
  enum class Kind { Inside, OutsideHull, OutsideAffineHull };
  Kind kind;
  /// Filled for Inside (all >= 0) and OutsideHull (some < 0).
  std::vector<Rational> coefficients;

  bool inside() const noexcept { return kind == Kind::Inside; }
};

Barycentric barycentric_membership(const RationalVector& x, std::span<const RationalVector> simplex);

/// Default vertex cap for face enumeration.
inline constexpr std::size_t kFaceVertexCap = 20;

/**
 * All proper nonempty faces, sorted by (dim, vertex indices).
 *
 * Facets come from supporting hyperplanes spanned by affinely independent
 * vertex subsets; lower faces are intersections of facets.
 */
std::vector<Face> proper_faces(std::span<const RationalVector> vertices,
                               std::size_t vertex_cap = kFaceVertexCap);
std::vector<Face> proper_faces(const LatticePolytope& p, std::size_t vertex_cap = kFaceVertexCap);

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// All x in {0..k}^d with a.x = c, in lexicographic order.
std::vector<LatticePoint> lattice_points_in_hyperplane(int d, std::int64_t k,
                                                       std::span<const std::int64_t> a,
                                                       std::int64_t c,
                                                       std::uint64_t cap = kEnumerationCap);

/// (k+1)^d, or throws ScopeError when it exceeds `cap`.
std::uint64_t box_point_count(int d, std::int64_t k, std::uint64_t cap = kEnumerationCap);

}  // namespace kissing
