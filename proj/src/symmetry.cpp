#include "kissing/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace kissing {

LatticePoint SignedPermutation::apply(const LatticePoint& x, std::int64_t k) const {
  LatticePoint y{std::vector<std::int64_t>(x.coords.size())};
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const std::int64_t v = x.coords[static_cast<std::size_t>(perm[i])];
    y.coords[i] = flips[i] ? k - v : v;
  }
  return y;
}

bool set_less(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

PairKey normalized(PointSet a, PointSet b) {
  if (set_less(b, a)) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

bool key_less(const PairKey& a, const PairKey& b) {
  if (a.first != b.first) return set_less(a.first, b.first);
  return set_less(a.second, b.second);
}

PointGroup::PointGroup(int d, std::int64_t k, std::uint64_t cap) : d_(d), k_(k) {
  if (d < 1 || k < 1) throw PreconditionError("PointGroup needs d >= 1 and k >= 1");
  if (d > kMaxSymmetryDim)
    throw ScopeError("symmetry tables limited to d <= " + std::to_string(kMaxSymmetryDim));
  n_ = static_cast<std::uint32_t>(box_point_count(d, k, cap));
  coords_.reserve(n_);
  std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    coords_.push_back(x);
    int j = d - 1;
    while (j >= 0 && x[static_cast<std::size_t>(j)] == k) x[static_cast<std::size_t>(j--)] = 0;
    if (j >= 0) ++x[static_cast<std::size_t>(j)];
  }

  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      SignedPermutation g{perm, std::vector<bool>(static_cast<std::size_t>(d))};
      for (int i = 0; i < d; ++i) g.flips[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      elements_.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Identity is element 0: identity permutation, no flips.
  table_.resize(elements_.size() * n_);
  for (std::size_t g = 0; g < elements_.size(); ++g)
    for (std::uint32_t i = 0; i < n_; ++i) table_[g * n_ + i] = index(elements_[g].apply(point(i), k_));
}

std::uint32_t PointGroup::index(const LatticePoint& p) const {
  if (p.dim() != static_cast<std::size_t>(d_)) throw DimensionError("point has the wrong dimension");
  std::uint64_t idx = 0;
  for (auto c : p.coords) {
    if (c < 0 || c > k_) throw PreconditionError("point outside [0,k]^d: " + p.to_string());
    idx = idx * static_cast<std::uint64_t>(k_ + 1) + static_cast<std::uint64_t>(c);
  }
  return static_cast<std::uint32_t>(idx);
}

PointSet PointGroup::apply(std::size_t g, const PointSet& s) const {
  PointSet out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = apply(g, s[i]);
  std::sort(out.begin(), out.end());
  return out;
}

PointSet PointGroup::canonical_set(const PointSet& s) const {
  PointSet best = s;
  for (std::size_t g = 1; g < order(); ++g) {
    PointSet img = apply(g, s);
    if (img < best) best = std::move(img);
  }
  return best;
}

std::vector<std::size_t> PointGroup::stabilizer(const PointSet& s) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < order(); ++g)
    if (apply(g, s) == s) out.push_back(g);
  return out;
}

PairKey PointGroup::canonicalize(const PointSet& a, const PointSet& b) const {
  PairKey best = normalized(a, b);
  for (std::size_t g = 1; g < order(); ++g) {
    PairKey img = normalized(apply(g, a), apply(g, b));
    if (key_less(img, best)) best = std::move(img);
  }
  return best;
}

std::vector<LatticePoint> to_points(const PointGroup& g, const PointSet& s) {
  std::vector<LatticePoint> out;
  for (auto i : s) out.push_back(g.point(i));
  return out;
}

PointSet to_indices(const PointGroup& g, std::span<const LatticePoint> pts) {
  PointSet out;
  for (const auto& p : pts) out.push_back(g.index(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kissing
