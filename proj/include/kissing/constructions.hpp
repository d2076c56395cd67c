#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kissing/geometry.hpp"
#include "kissing/rational.hpp"

namespace kissing {

struct ConstructionSpec {
  int sigma = 1;
  int delta = 4;
  std::int64_t k = 1;
  int dimension() const { return delta * (sigma + 1); }
};

/**
 * Near-kissing pair in dimension d = delta (sigma + 1). P and Q are the hulls
 * of the lattice points of [0,k]^d on a.x = 0 and a.x = 1 for the lifted
 * vector a; they are never enumerated. Membership of pLift and qLift is
 * carried by the generator families of each matrix column.
 */
struct ConstructionOutput {
  ConstructionSpec spec;
  int d = 0;
  std::vector<Integer> aVec;  // a_i = (k(1 - delta))^{i-1}
  RationalMatrix MP;
  RationalMatrix MQ;
  Rational theta;
  std::vector<Rational> coeffP;           // weights of the columns of MP
  std::vector<Rational> coeffQ;           // displayed form theta (1 + (-1)^i) / (k(delta-1))^i
  std::vector<Rational> coeffQSumForm;    // theta / (k(delta-1))^i + theta / (k(1-delta))^i
  RationalVector pSmall;
  RationalVector qSmall;
  RationalVector pLift;
  RationalVector qLift;
  std::vector<std::vector<LatticePoint>> generatorsP;  // per column of MP
  std::vector<std::vector<LatticePoint>> generatorsQ;  // per column of MQ
  bool convexityGuaranteed = false;                    // delta >= 4
};

/// Block replication: each coordinate repeated delta times.
RationalVector lift(const RationalVector& x, int delta);

/// theta for the given parameters. Throws PreconditionError for delta < 3 or a zero denominator.
Rational construction_theta(const ConstructionSpec& spec);

/// Throws PreconditionError if delta < 3, sigma < 1 or k < 1.
ConstructionOutput build_construction(const ConstructionSpec& spec);

struct ConstructionCheck {
  bool ok = true;
  std::vector<std::string> failures;
  Rational liftDistSq;
  Rational boundSq;
  explicit operator bool() const noexcept { return ok; }
};

/**
 * Re-verifies a construction exactly: generator hyperplanes and box, column
 * barycenters, coefficient signs and sums (delta >= 4 only), agreement of the
 * two q coefficient forms, q_1 = p_1, the per-coordinate gap and the squared
 * distance bound.
 */
ConstructionCheck verify_construction(const ConstructionOutput& out);

/// sigma = floor(d^beta), delta = floor(d / (sigma + 1)).
std::pair<int, int> floor_parameters(int d, double beta);

struct Witness {
  std::vector<LatticePoint> P;
  std::vector<LatticePoint> Q;
  Rational claimedDistSq;
};

class NotInCatalogError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Diagonal {0, 1...1} against e_1..e_{d-1}. Needs d >= 2.
Witness witness_diagonal(int d);
/// (1,...,1) against the origin and the points with one of the first d-1
/// coordinates equal to k-1 and the rest equal to k. Needs d >= 2, k >= 2.
Witness witness_near_corner(int d, std::int64_t k);
/// Exact optimal pairs for the tabulated (d, k).
Witness witness_catalog(int d, std::int64_t k);
/// (d, k) pairs present in the catalog, in table order.
std::vector<std::pair<int, std::int64_t>> catalog_entries();

}  // namespace kissing
