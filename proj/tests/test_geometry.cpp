#include <doctest.h>

#include <set>

#include "kissing/geometry.hpp"
#include "kissing/linalg.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kissing;
using namespace kissing::testing;

TEST_CASE("affine_rank examples") {
  CHECK(affine_rank(pts({{1, 2, 3}})) == 0);
  CHECK(affine_rank(pts({{0, 0, 0}, {1, 1, 1}})) == 1);
  CHECK_THROWS_AS(affine_rank(std::vector<RationalVector>{}), PreconditionError);
}

TEST_CASE("affine_rank of points on a random 2-flat in dimension 5") {
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RationalVector> gen(3, RationalVector(5));
    for (auto& g : gen)
      for (std::size_t i = 0; i < 5; ++i) g[i] = Rational(uniform(-5, 5));
    if (affine_rank(gen) != 2) continue;
    std::vector<RationalVector> cloud;
    for (int i = 0; i < 20; ++i) {
      const Rational a = random_rational(), b = random_rational();
      cloud.push_back(gen[0] * (Rational(1) - a - b) + gen[1] * a + gen[2] * b);
    }
    cloud.push_back(gen[0]);
    cloud.push_back(gen[1]);
    cloud.push_back(gen[2]);
    CHECK(affine_rank(cloud) == 2);
  }
}

TEST_CASE("barycentric_membership examples") {
  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  auto b = barycentric_membership(tri[0], tri);
  CHECK(b.inside());
  CHECK(b.coefficients == std::vector<Rational>{1, 0, 0});

  auto seg = pts({{0, 0}, {1, 1}});
  auto mid = barycentric_membership(RationalVector{frac(1, 2), frac(1, 2)}, seg);
  CHECK(mid.coefficients == std::vector<Rational>{frac(1, 2), frac(1, 2)});

  auto diag = pts({{0, 0, 0}, {1, 1, 1}});
  auto third = barycentric_membership(RationalVector{frac(1, 3), frac(1, 3), frac(1, 3)}, diag);
  CHECK(third.inside());
  CHECK(third.coefficients == std::vector<Rational>{frac(2, 3), frac(1, 3)});

  auto beyond = barycentric_membership(RationalVector{2, 2}, seg);
  CHECK(beyond.kind == Barycentric::Kind::OutsideHull);
  CHECK(beyond.coefficients == std::vector<Rational>{-1, 2});
  CHECK(barycentric_membership(RationalVector{1, 0}, seg).kind == Barycentric::Kind::OutsideAffineHull);
  CHECK_THROWS_AS(barycentric_membership(RationalVector{1, 0}, pts({{0, 0}, {1, 1}, {2, 2}})),
                  PreconditionError);
}

TEST_CASE("barycentric coefficients reproduce the point exactly") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(1, 4));
    const std::size_t m = static_cast<std::size_t>(uniform(1, static_cast<long>(d) + 1));
    std::vector<RationalVector> s(m, RationalVector(d));
    for (auto& v : s)
      for (std::size_t i = 0; i < d; ++i) v[i] = Rational(uniform(-3, 3));
    if (!affinely_independent(s)) continue;
    RationalVector x(d);
    Rational left = 1;
    for (std::size_t j = 0; j < m; ++j) {
      Rational w = j + 1 == m ? left : random_rational(3, 5);
      left -= w;
      x += s[j] * w;
    }
    auto b = barycentric_membership(x, s);
    REQUIRE(b.kind != Barycentric::Kind::OutsideAffineHull);
    RationalVector back(d);
    Rational sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      back += s[j] * b.coefficients[j];
      sum += b.coefficients[j];
    }
    CHECK(back == x);
    CHECK(sum == Rational(1));
  }
}

TEST_CASE("proper_faces of small polytopes") {
  auto seg = proper_faces(pts({{0}, {1}}));
  REQUIRE(seg.size() == 2);
  CHECK(seg[0].vertices == std::vector<std::size_t>{0});
  CHECK(seg[0].facet);

  auto tri = proper_faces(pts({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(tri.size() == 6);
  CHECK(std::count_if(tri.begin(), tri.end(), [](const Face& f) { return f.facet; }) == 3);

  auto square = proper_faces(pts({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(square.size() == 8);
  for (const Face& f : square) {
    if (f.dim == 1) CHECK(f.facet);
  }
  // The diagonals are not faces.
  for (const Face& f : square) {
    CHECK(f.vertices != std::vector<std::size_t>{0, 3});
    CHECK(f.vertices != std::vector<std::size_t>{1, 2});
  }

  auto cube = proper_faces(pts({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}));
  CHECK(cube.size() == 8 + 12 + 6);
  CHECK(proper_faces(pts({{3, 3}})).empty());
}

TEST_CASE("proper_faces of a simplex are all proper nonempty subsets") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<RationalVector> simplex(n, RationalVector(n));
    for (std::size_t i = 1; i < n; ++i) simplex[i][i - 1] = 1;
    auto faces = proper_faces(simplex);
    CHECK(faces.size() == (1u << n) - 2);
    for (const Face& f : faces) {
      std::vector<RationalVector> sub;
      for (auto i : f.vertices) sub.push_back(simplex[i]);
      CHECK(affine_rank(sub) == f.dim);
    }
  }
}

TEST_CASE("face enumeration respects the vertex cap") {
  std::vector<RationalVector> many;
  for (long i = 0; i < 21; ++i) many.push_back(RationalVector{i, i * i});
  CHECK_THROWS_AS(proper_faces(many), ScopeError);
}

TEST_CASE("lattice polytope keeps only extreme points") {
  LatticePolytope sq(lattice({{1, 1}, {0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}}), 2);
  CHECK(sq.vertices() == lattice({{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
  CHECK_THROWS_AS(LatticePolytope(lattice({{3, 0}}), 2), PreconditionError);
}

TEST_CASE("lattice_points_in_hyperplane examples") {
  std::vector<std::int64_t> ones{1, 1};
  CHECK(lattice_points_in_hyperplane(2, 1, ones, 0) == lattice({{0, 0}}));
  CHECK(lattice_points_in_hyperplane(2, 1, ones, 1) == lattice({{0, 1}, {1, 0}}));
  std::vector<std::int64_t> a{1, 2, 4};
  CHECK(lattice_points_in_hyperplane(3, 1, a, 3) == lattice({{1, 1, 0}}));
  std::vector<std::int64_t> big(30, 1);
  CHECK_THROWS_AS(lattice_points_in_hyperplane(30, 1, big, 0), ScopeError);
}

TEST_CASE("hyperplane slices partition the box") {
  for (int d = 1; d <= 3; ++d)
    for (std::int64_t k = 1; k <= 2; ++k)
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(d));
        std::int64_t lo = 0, hi = 0;
        for (auto& x : a) {
          x = uniform(-3, 3);
          (x < 0 ? lo : hi) += x * k;
        }
        std::set<std::vector<std::int64_t>> seen;
        std::size_t total = 0;
        for (std::int64_t c = lo; c <= hi; ++c)
          for (auto& p : lattice_points_in_hyperplane(d, k, a, c)) {
            ++total;
            seen.insert(p.coords);
          }
        std::size_t expect = 1;
        for (int i = 0; i < d; ++i) expect *= static_cast<std::size_t>(k + 1);
        CHECK(total == expect);
        CHECK(seen.size() == expect);
      }
}
