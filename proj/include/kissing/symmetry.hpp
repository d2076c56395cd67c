#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kissing/geometry.hpp"

namespace kissing {

/// y_i = x_{perm[i]}, replaced by k - x_{perm[i]} when flips[i] is set.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<bool> flips;
  LatticePoint apply(const LatticePoint& x, std::int64_t k) const;
};

/// Sorted point indices; index order equals lexicographic order of coordinates.
using PointSet = std::vector<std::uint32_t>;

/// Pair key ordered by (size, lexicographic): the smaller set comes first.
struct PairKey {
  PointSet first;
  PointSet second;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

/// Orders (size, lex), so that shorter sets precede longer ones.
bool set_less(const PointSet& a, const PointSet& b);
PairKey normalized(PointSet a, PointSet b);
bool key_less(const PairKey& a, const PairKey& b);

inline constexpr int kMaxSymmetryDim = 6;

/**
 * Points of {0..k}^d indexed in base k+1 with the first coordinate most
 * significant, together with the action of all 2^d d! signed permutations
 * as index tables.
 */
class PointGroup {
 public:
  /// Throws ScopeError if d > kMaxSymmetryDim or (k+1)^d exceeds the cap.
  PointGroup(int d, std::int64_t k, std::uint64_t cap = kEnumerationCap);

  int dim() const { return d_; }
  std::int64_t k() const { return k_; }
  std::uint32_t point_count() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const SignedPermutation& element(std::size_t g) const { return elements_[g]; }

  const std::vector<std::int64_t>& coords(std::uint32_t idx) const { return coords_[idx]; }
  LatticePoint point(std::uint32_t idx) const { return {coords_[idx]}; }
  std::uint32_t index(const LatticePoint& p) const;
  std::uint32_t apply(std::size_t g, std::uint32_t idx) const { return table_[g * n_ + idx]; }
  PointSet apply(std::size_t g, const PointSet& s) const;

  /// Lexicographically smallest image of s.
  PointSet canonical_set(const PointSet& s) const;
  /// Elements g with g(s) = s.
  std::vector<std::size_t> stabilizer(const PointSet& s) const;
  /// Smallest normalized image of the pair over the group, both orders allowed.
  PairKey canonicalize(const PointSet& a, const PointSet& b) const;

 private:
  int d_;
  std::int64_t k_;
  std::uint32_t n_;
  std::vector<std::vector<std::int64_t>> coords_;
  std::vector<SignedPermutation> elements_;
  std::vector<std::uint32_t> table_;
};

std::vector<LatticePoint> to_points(const PointGroup& g, const PointSet& s);
PointSet to_indices(const PointGroup& g, std::span<const LatticePoint> pts);

}  // namespace kissing
