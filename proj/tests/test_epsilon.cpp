#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "kissing/bounds.hpp"
#include "kissing/epsilon.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kissing;
using namespace kissing::testing;

namespace {

using Pt = std::vector<long>;
using PtSet = std::vector<Pt>;
using OrbitKey = std::pair<PtSet, PtSet>;

// Orbit representative computed directly on coordinates, without index tables.
OrbitKey oracle_orbit_rep(PtSet a, PtSet b, int d, long k) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  auto order = [](PtSet x, PtSet y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (y.size() < x.size() || (y.size() == x.size() && y < x)) std::swap(x, y);
    return OrbitKey{x, y};
  };
  auto better = [](const OrbitKey& x, const OrbitKey& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  };
  OrbitKey best = order(a, b);
  do {
    for (int mask = 0; mask < (1 << d); ++mask) {
      auto act = [&](const PtSet& s) {
        PtSet out;
        for (const auto& p : s) {
          Pt q(p.size());
          for (int i = 0; i < d; ++i) {
            const long v = p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            q[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? k - v : v;
          }
          out.push_back(q);
        }
        return out;
      };
      OrbitKey img = order(act(a), act(b));
      if (better(img, best)) best = img;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PtSet to_pts(const PointGroup& g, const PointSet& s) {
  PtSet out;
  for (auto i : s) out.push_back(Pt(g.coords(i).begin(), g.coords(i).end()));
  return out;
}

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("kissing_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("group tables") {
  PointGroup g(3, 2);
  CHECK(g.point_count() == 27);
  CHECK(g.order() == 48);
  CHECK(g.index(LatticePoint{{1, 0, 2}}) == 1 * 9 + 0 * 3 + 2);
  for (std::uint32_t i = 0; i < g.point_count(); ++i) {
    CHECK(g.apply(0, i) == i);
    CHECK(g.index(g.point(i)) == i);
  }
  // Every element permutes the points.
  for (std::size_t e = 0; e < g.order(); ++e) {
    std::set<std::uint32_t> img;
    for (std::uint32_t i = 0; i < g.point_count(); ++i) img.insert(g.apply(e, i));
    CHECK(img.size() == g.point_count());
  }
  CHECK_THROWS_AS(PointGroup(7, 1), ScopeError);
}

TEST_CASE("canonicalize examples") {
  SimplexPair a{lattice({{1, 1}}), lattice({{0, 1}, {1, 0}})};
  SimplexPair b{lattice({{0, 0}}), lattice({{0, 1}, {1, 0}})};
  CHECK(canonicalize(a, 2, 1) == canonicalize(b, 2, 1));
  PointGroup g(2, 1);
  const PairKey id = normalized(to_indices(g, b.SP), to_indices(g, b.SQ));
  CHECK(canonicalize(b, 2, 1) == id);
  SimplexPair c{lattice({{0, 0}}), lattice({{0, 1}, {1, 1}})};
  CHECK_FALSE(canonicalize(c, 2, 1) == canonicalize(b, 2, 1));
}

TEST_CASE("orbit count of point/segment pairs matches the coordinate oracle") {
  PointGroup g(2, 1);
  std::set<OrbitKey> oracle;
  std::set<std::pair<PointSet, PointSet>> keys;
  for (std::uint32_t p = 0; p < 4; ++p)
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = a + 1; b < 4; ++b) {
        if (p == a || p == b) continue;
        const PointSet P{p}, Q{a, b};
        auto r = min_distance_sq(to_points(g, P), to_points(g, Q));
        if (r.distSq.is_zero()) continue;
        oracle.insert(oracle_orbit_rep(to_pts(g, P), to_pts(g, Q), 2, 1));
        auto key = g.canonicalize(P, Q);
        keys.insert({key.first, key.second});
      }
  CHECK(keys.size() == oracle.size());
  CHECK(oracle.size() == 2);
}

TEST_CASE("symmetric enumeration visits one candidate per orbit") {
  for (auto [d, k] : std::vector<std::pair<int, long>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    CAPTURE(d);
    CAPTURE(k);
    SearchSpace reduced(d, k, true), full(d, k, false);
    std::set<OrbitKey> oracle;
    std::size_t raw = 0;
    full.visit_all([&](const Candidate& c) {
      ++raw;
      oracle.insert(oracle_orbit_rep(to_pts(full.group(), c.sp), to_pts(full.group(), c.sq), d, k));
      return true;
    });
    std::set<OrbitKey> seen;
    std::size_t visited = 0;
    reduced.visit_all([&](const Candidate& c) {
      ++visited;
      const auto rep = oracle_orbit_rep(to_pts(reduced.group(), c.sp), to_pts(reduced.group(), c.sq), d, k);
      CHECK(seen.insert(rep).second);
      CHECK(rep == OrbitKey{to_pts(reduced.group(), c.sp), to_pts(reduced.group(), c.sq)});
      // Every candidate satisfies the simplex-pair invariants.
      CHECK(c.sp.size() + c.sq.size() == static_cast<std::size_t>(d) + 1);
      CHECK(min_distance_sq(to_points(reduced.group(), c.sp), to_points(reduced.group(), c.sq)).distSq > Rational(0));
      return true;
    });
    CHECK(visited == oracle.size());
    CHECK(raw >= visited);
  }
}

TEST_CASE("enumeration examples") {
  SearchSpace one(1, 1, true);
  std::vector<Candidate> all;
  one.visit_all([&](const Candidate& c) {
    all.push_back(c);
    return true;
  });
  REQUIRE(all.size() == 1);
  CHECK(to_points(one.group(), all[0].sp) == lattice({{0}}));
  CHECK(to_points(one.group(), all[0].sq) == lattice({{1}}));

  SearchSpace two(2, 1, true);
  bool found = false;
  const auto target = two.group().canonicalize(PointSet{0}, PointSet{1, 2});
  two.visit_all([&](const Candidate& c) {
    found |= PairKey{c.sp, c.sq} == target;
    return true;
  });
  CHECK(found);
}

TEST_CASE("epsilon small values") {
  for (long k = 1; k <= 4; ++k) CHECK(epsilon(1, k).epsSq == Rational(1));
  auto e21 = epsilon(2, 1);
  CHECK(e21.epsSq == frac(1, 2));
  CHECK(e21.status == SearchStatus::Complete);
  CHECK(epsilon(3, 1).epsSq == frac(1, 6));
  CHECK(epsilon(2, 4).epsSq == frac(1, 25));
  auto e22 = epsilon(2, 2);
  CHECK(e22.epsSq == frac(1, 5));
  CHECK(e22.witness.SP == lattice({{0, 1}}));
  CHECK(e22.witness.SQ == lattice({{0, 0}, {1, 2}}));
}

TEST_CASE("epsilon results verify and respect the bounds") {
  for (auto [d, k] : std::vector<std::pair<int, long>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
    auto r = epsilon(d, k);
    auto w = check_witness(r.witness, d, k, r.epsSq);
    CHECK_MESSAGE(w.ok, w.violation);
    CHECK(verify_certificate(r.certificate, to_rational(r.witness.SP), to_rational(r.witness.SQ)));
    CHECK(r.epsSq >= lower_bound_lattice_sq(d, k).hadamard);
    CHECK(r.epsSq <= upper_bound_special_sq(d, k));
    CHECK(canonicalize(r.witness, d, k) ==
          normalized(to_indices(PointGroup(d, k), r.witness.SP), to_indices(PointGroup(d, k), r.witness.SQ)));
  }
}

TEST_CASE("result is independent of the number of jobs") {
  for (auto [d, k] : std::vector<std::pair<int, long>>{{2, 3}, {3, 1}, {3, 2}}) {
    std::optional<EpsilonResult> base;
    for (unsigned jobs : {1u, 2u, 8u}) {
      EpsilonOptions o;
      o.jobs = jobs;
      auto r = epsilon(d, k, o);
      if (!base) {
        base = r;
        continue;
      }
      CHECK(r.epsSq == base->epsSq);
      CHECK(r.witness.SP == base->witness.SP);
      CHECK(r.witness.SQ == base->witness.SQ);
    }
  }
}

TEST_CASE("symmetry reduction and pruning do not change the result") {
  for (auto [d, k] : std::vector<std::pair<int, long>>{{2, 1}, {2, 2}, {3, 1}}) {
    EpsilonOptions brute;
    brute.symmetry = false;
    brute.prune = false;
    auto a = epsilon(d, k), b = epsilon(d, k, brute);
    CHECK(a.epsSq == b.epsSq);
    CHECK(a.witness.SP == b.witness.SP);
    CHECK(a.witness.SQ == b.witness.SQ);
    CHECK(b.stats.candidatesPruned == 0);
  }
  for (long k = 1; k <= 3; ++k) {
    EpsilonOptions noprune;
    noprune.prune = false;
    CHECK(epsilon(2, k, noprune).epsSq == epsilon(2, k).epsSq);
  }
}

TEST_CASE("initial incumbent below epsilon still finds epsilon") {
  EpsilonOptions o;
  o.initialIncumbent = frac(1, 100);
  CHECK(epsilon(2, 2, o).epsSq == frac(1, 5));
}

TEST_CASE("time budget yields an incomplete upper bound") {
  EpsilonOptions o;
  o.timeBudgetSeconds = 0.0;
  auto r = epsilon(3, 3, o);
  CHECK(r.status == SearchStatus::Incomplete);
  CHECK(r.epsSq >= frac(1, 299));
}

TEST_CASE("cache records round trip") {
  CacheRecord r{2, 2, SearchStatus::Complete, frac(1, 5), {lattice({{0, 1}}), lattice({{0, 0}, {1, 2}})}};
  const std::string line = format_cache_record(r);
  CHECK(line == "2,2,COMPLETE,1,5,0 1,0 0;1 2");
  auto back = parse_cache_record(line);
  CHECK(back.d == 2);
  CHECK(back.epsSq == frac(1, 5));
  CHECK(back.witness.SQ == r.witness.SQ);
  CHECK(parse_cache_record("3,3,INCOMPLETE,1,200,,").witness.SP.empty());
  CHECK_THROWS_AS(parse_cache_record("2,2,COMPLETE,1,5"), ParseError);
  CHECK_THROWS_AS(parse_cache_record("2,2,DONE,1,5,0 1,0 0;1 2"), ParseError);
  CHECK_THROWS_AS(parse_cache_record("2,2,COMPLETE,1,0,0 1,0 0;1 2"), ParseError);
  try {
    parse_cache_record("2,x,COMPLETE,1,5,0 1,0 0;1 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
  }
}

TEST_CASE("cache is appended and reused") {
  const std::string path = temp_path("cache.csv");
  EpsilonOptions o;
  o.cachePath = path;
  auto first = epsilon(2, 3, o);
  CHECK_FALSE(first.stats.fromCache);
  auto second = epsilon(2, 3, o);
  CHECK(second.stats.fromCache);
  CHECK(second.epsSq == first.epsSq);
  CHECK(second.witness.SQ == first.witness.SQ);
  CHECK(read_cache(path).size() == 1);

  std::ofstream(path, std::ios::app) << "2,4,COMPLETE,1,26,1 1,0 0;3 4\n";
  CHECK_THROWS_AS(epsilon(2, 4, o), CacheError);
  std::filesystem::remove(path);
}

TEST_CASE("monotonicity check") {
  std::vector<EpsilonResult> rs;
  for (auto [d, e] : std::vector<std::pair<int, long>>{{2, 2}, {3, 6}, {4, 18}, {5, 58}}) {
    EpsilonResult r;
    r.d = d;
    r.k = 1;
    r.epsSq = frac(1, e);
    rs.push_back(r);
  }
  CHECK(check_monotonicity(rs).ok);
  std::swap(rs[1].epsSq, rs[2].epsSq);
  auto bad = check_monotonicity(rs);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.violations.empty());
  rs[1].k = 2;
  CHECK_FALSE(check_monotonicity(rs).ok);
}

TEST_CASE("segment sweeps over 0/1 cubes") {
  auto s3 = segment_sweep(3);
  CHECK(s3.minDistSq == frac(1, 6));
  auto s4 = segment_sweep(4);
  CHECK(s4.minDistSq == frac(1, 6));
  CHECK(s4.pairsChecked > 0);
  CHECK(min_distance_sq(s4.argmin.first, s4.argmin.second).distSq == frac(1, 6));
}

TEST_CASE("fixed dimension bound") {
  std::map<std::pair<int, std::int64_t>, Rational> known{{{1, 1}, 1}, {{2, 1}, frac(1, 2)}, {{3, 1}, frac(1, 6)}};
  auto pad = lattice({{0, 0, 0, 0, 0}, {1, 1, 1, 0, 0}});
  auto face = lattice({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
  auto rep = check_fixed_dim_bound(pad, face, 1, known);
  CHECK(rep.status == BoundStatus::Pass);
  CHECK(rep.unionDim == 3);
  CHECK(rep.distSq == frac(1, 6));

  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LatticePoint> p, q;
    for (int i = 0; i < 3; ++i) {
      p.push_back({{uniform(0, 1), uniform(0, 1), uniform(0, 1), 0}});
      q.push_back({{uniform(0, 1), uniform(0, 1), uniform(0, 1), 0}});
    }
    if (min_distance_sq(p, q).distSq.is_zero()) continue;
    auto r = check_fixed_dim_bound(p, q, 1, known);
    CHECK(r.status == BoundStatus::Pass);
    ++checked;
  }
  CHECK(checked > 0);

  auto missing = check_fixed_dim_bound(pad, face, 1, {});
  CHECK(missing.status == BoundStatus::Unchecked);
}
