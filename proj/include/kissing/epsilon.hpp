#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kissing/distance.hpp"
#include "kissing/symmetry.hpp"

namespace kissing {

/// Pair of lattice simplices with dim(SP) + dim(SQ) = d - 1 and disjoint affine hulls.
struct SimplexPair {
  std::vector<LatticePoint> SP;
  std::vector<LatticePoint> SQ;
};

struct Candidate {
  PointSet sp;
  PointSet sq;
};

/**
 * Candidate pairs for (d, k), split into units by SP. With symmetry on, the
 * units are canonical representatives of SP orbits and only canonical pairs
 * are visited, one per orbit. With symmetry off every pair is visited
 * (both orders when the sizes are equal).
 */
class SearchSpace {
 public:
  SearchSpace(int d, std::int64_t k, bool symmetry, std::uint64_t cap = kEnumerationCap);

  const PointGroup& group() const { return group_; }
  bool symmetric() const { return symmetry_; }
  std::size_t unit_count() const { return units_.size(); }
  const PointSet& unit(std::size_t u) const { return units_[u]; }

  /// Visits the candidates of unit u in index order; stops when f returns false.
  void visit_unit(std::size_t u, const std::function<bool(const Candidate&)>& f) const;
  /// All units in order.
  void visit_all(const std::function<bool(const Candidate&)>& f) const;

 private:
  PointGroup group_;
  bool symmetry_;
  std::vector<PointSet> units_;
  std::vector<std::vector<std::size_t>> stabilizers_;
};

struct SearchStats {
  std::uint64_t orbitsVisited = 0;
  std::uint64_t candidatesPruned = 0;
  std::uint64_t engineCalls = 0;
  double wallSeconds = 0;
  bool fromCache = false;
};

enum class SearchStatus { Complete, Incomplete };

/**
 * When status is Incomplete, epsSq is only the best upper bound reached and
 * the witness may be empty.
 */
struct EpsilonResult {
  int d = 0;
  std::int64_t k = 0;
  SearchStatus status = SearchStatus::Complete;
  Rational epsSq;
  SimplexPair witness;
  DistanceCertificate certificate;
  SearchStats stats;
  bool has_witness() const { return !witness.SP.empty(); }
};

struct EpsilonOptions {
  unsigned jobs = 1;
  std::optional<std::string> cachePath;
  std::optional<double> timeBudgetSeconds;
  bool prune = true;
  bool symmetry = true;
  /// Defaults to upper_bound_special_sq(d, k) for d >= 2, none for d = 1.
  std::optional<Rational> initialIncumbent;
  std::uint64_t enumerationCap = kEnumerationCap;
};

/// Raised when a cache record exists but fails verification.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Exact epsilon(d,k)^2. With a cache path, a COMPLETE record for (d, k) is
 * verified and returned instead of searching; otherwise the result is
 * appended. The witness is the smallest canonical key among minimizers,
 * independent of jobs.
 */
EpsilonResult epsilon(int d, std::int64_t k, const EpsilonOptions& options = {});

/// Lattice (d,k) polytopes: vertices of both sides in [0,k]^d.
PairKey canonicalize(const SimplexPair& pair, int d, std::int64_t k);

struct WitnessCheck {
  bool ok = true;
  std::string violation;
  Rational distSq;
  DistanceCertificate certificate;
};

/// Checks simplices, dimension sum d-1, disjoint affine hulls, distance = epsSq.
WitnessCheck check_witness(const SimplexPair& pair, int d, std::int64_t k, const Rational& epsSq);

// Cache records: d,k,status,eps_num,eps_den,witnessP,witnessQ with points
// separated by ';' and coordinates by spaces.
struct CacheRecord {
  int d = 0;
  std::int64_t k = 0;
  SearchStatus status = SearchStatus::Complete;
  Rational epsSq;
  SimplexPair witness;
};

std::string format_cache_record(const CacheRecord& r);
/// Throws ParseError on malformed lines.
CacheRecord parse_cache_record(const std::string& line);
/// Every record in file order; missing file gives an empty list.
std::vector<CacheRecord> read_cache(const std::string& path);
void append_cache(const std::string& path, const CacheRecord& r);
/// Last COMPLETE record for (d, k).
std::optional<CacheRecord> find_complete(const std::vector<CacheRecord>& records, int d, std::int64_t k);

struct MonotonicityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Strict decrease of epsSq in d, for complete results sharing one k.
MonotonicityReport check_monotonicity(const std::vector<EpsilonResult>& results);

enum class BoundStatus { Pass, Fail, Unchecked };

struct FixedDimReport {
  BoundStatus status = BoundStatus::Unchecked;
  int unionDim = 0;
  Rational distSq;
  std::optional<Rational> epsSq;
};

/// d(P,Q)^2 >= eps(dim(P u Q), k)^2, looked up in known. Unchecked when missing.
FixedDimReport check_fixed_dim_bound(std::span<const LatticePoint> vp, std::span<const LatticePoint> vq,
                                     std::int64_t k, const std::map<std::pair<int, std::int64_t>, Rational>& known);

struct SegmentSweep {
  Rational minDistSq;
  std::uint64_t pairsChecked = 0;
  std::pair<std::vector<LatticePoint>, std::vector<LatticePoint>> argmin;
};

/// Minimum over disjoint segment pairs with vertices in {0,1}^d. First segment up to symmetry.
SegmentSweep segment_sweep(int d);

}  // namespace kissing
