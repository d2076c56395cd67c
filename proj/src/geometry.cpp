#include "kissing/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "kissing/linalg.hpp"
#include "kissing/minnorm.hpp"

namespace kissing {

RationalVector LatticePoint::to_rational() const {
  return RationalVector::from_integers(std::span<const std::int64_t>(coords));
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

std::vector<RationalVector> to_rational(std::span<const LatticePoint> points) {
  std::vector<RationalVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.to_rational());
  return out;
}

LatticePolytope::LatticePolytope(std::vector<LatticePoint> points, std::int64_t k) : k_(k) {
  if (points.empty()) throw PreconditionError("lattice polytope needs at least one point");
  const std::size_t d = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != d) throw DimensionError("lattice polytope points of mixed dimension");
    for (auto c : p.coords)
      if (c < 0 || c > k) throw PreconditionError("lattice point outside [0,k]^d: " + p.to_string());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Drop points in the hull of the others. Checking against the current
  // survivors is enough: a redundant point stays redundant as others go.
  std::vector<bool> keep(points.size(), true);
  const auto rat = to_rational(points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i && keep[j]) others.push_back(rat[j]);
    if (!others.empty() && in_convex_hull(rat[i], others)) keep[i] = false;
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    if (keep[i]) vertices_.push_back(std::move(points[i]));
}

int affine_rank(std::span<const RationalVector> points) {
  if (points.empty()) throw PreconditionError("affine_rank of an empty list");
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

int affine_rank(std::span<const LatticePoint> points) {
  const auto rat = to_rational(points);
  return affine_rank(rat);
}

bool affinely_independent(std::span<const RationalVector> points) {
  return !points.empty() && affine_rank(points) + 1 == static_cast<int>(points.size());
}

Barycentric barycentric_membership(const RationalVector& x, std::span<const RationalVector> simplex) {
  if (!affinely_independent(simplex))
    throw PreconditionError("barycentric_membership: points are not affinely independent");
  const std::size_t d = x.dim();
  const std::size_t n = simplex.size();
  RationalMatrix a(d + 1, n);
  RationalVector b(d + 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (simplex[j].dim() != d) throw DimensionError("barycentric_membership: dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) a(i, j) = simplex[j][i];
    a(d, j) = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = x[i];
  b[d] = 1;
  auto sol = solve_unique(a, b);
  if (!sol) return {Barycentric::Kind::OutsideAffineHull, {}};
  const bool nonneg =
      std::all_of(sol->begin(), sol->end(), [](const Rational& l) { return l.sign() >= 0; });
  return {nonneg ? Barycentric::Kind::Inside : Barycentric::Kind::OutsideHull, sol->coords()};
}

namespace {

// Component of b orthogonal to span(h); h is linearly independent.
RationalVector orthogonal_part(const RationalVector& b, const std::vector<RationalVector>& h) {
  if (h.empty()) return b;
  RationalMatrix g = gram(h);
  RationalVector rhs(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) rhs[i] = h[i].dot(b);
  auto c = solve_unique(g, rhs);
  RationalVector out = b;
  for (std::size_t i = 0; i < h.size(); ++i) out -= h[i] * (*c)[i];
  return out;
}

// Visits every size-m subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t m, F&& f) {
  if (m > n) return;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Face> proper_faces(std::span<const RationalVector> vertices, std::size_t vertex_cap) {
  if (vertices.empty()) throw PreconditionError("proper_faces of an empty vertex set");
  if (vertices.size() > vertex_cap)
    throw ScopeError("face enumeration limited to " + std::to_string(vertex_cap) + " vertices");
  const std::size_t n = vertices.size();
  const int m = affine_rank(vertices);
  if (m == 0) return {};

  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < n; ++i) diffs.push_back(vertices[i] - vertices[0]);
  std::vector<RationalVector> basis;
  for (auto i : independent_subset(diffs)) basis.push_back(diffs[i]);

  std::set<std::vector<std::size_t>> facets;
  for_each_subset(n, static_cast<std::size_t>(m), [&](const std::vector<std::size_t>& sub) {
    std::vector<RationalVector> h;
    for (std::size_t i = 1; i < sub.size(); ++i) h.push_back(vertices[sub[i]] - vertices[sub[0]]);
    if (rank(h) != h.size()) return;
    RationalVector normal;
    for (const auto& b : basis) {
      normal = orthogonal_part(b, h);
      if (!normal.is_zero()) break;
    }
    const Rational level = normal.dot(vertices[sub[0]]);
    int above = 0, below = 0;
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < n; ++v) {
      const int s = (normal.dot(vertices[v]) - level).sign();
      if (s > 0) ++above;
      if (s < 0) ++below;
      if (s == 0) on.push_back(v);
    }
    if (above == 0 || below == 0) facets.insert(std::move(on));
  });

  std::set<std::vector<std::size_t>> faces(facets.begin(), facets.end());
  std::vector<std::vector<std::size_t>> frontier(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier) {
      for (const auto& g : facets) {
        std::vector<std::size_t> meet;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(meet));
        if (!meet.empty() && faces.insert(meet).second) next.push_back(std::move(meet));
      }
    }
    frontier = std::move(next);
  }

  std::vector<Face> out;
  for (const auto& f : faces) {
    std::vector<RationalVector> pts;
    for (auto i : f) pts.push_back(vertices[i]);
    out.push_back({f, affine_rank(pts), facets.count(f) > 0});
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
  });
  return out;
}

std::vector<Face> proper_faces(const LatticePolytope& p, std::size_t vertex_cap) {
  const auto rat = p.rational_vertices();
  return proper_faces(rat, vertex_cap);
}

std::uint64_t box_point_count(int d, std::int64_t k, std::uint64_t cap) {
  if (d < 0 || k < 0) throw PreconditionError("box_point_count: negative d or k");
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > cap / static_cast<std::uint64_t>(k + 1))
      throw ScopeError("(k+1)^d exceeds the enumeration cap of " + std::to_string(cap));
    total *= static_cast<std::uint64_t>(k + 1);
  }
  if (total > cap) throw ScopeError("(k+1)^d exceeds the enumeration cap of " + std::to_string(cap));
  return total;
}

std::vector<LatticePoint> lattice_points_in_hyperplane(int d, std::int64_t k,
                                                       std::span<const std::int64_t> a,
                                                       std::int64_t c, std::uint64_t cap) {
  if (a.size() != static_cast<std::size_t>(d)) throw DimensionError("hyperplane normal has wrong dimension");
  box_point_count(d, k, cap);
  std::vector<LatticePoint> out;
  std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += a[i] * x[i];
    if (s == c) out.push_back({x});
    int i = d - 1;
    while (i >= 0 && x[i] == k) x[i--] = 0;
    if (i < 0) break;
    ++x[i];
  }
  return out;
}

}  // namespace kissing
