#pragma once

#include <initializer_list>
#include <vector>

#include "kissing/geometry.hpp"

namespace kissing::testing {

inline std::vector<RationalVector> pts(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RationalVector> out;
  for (const auto& r : rows) {
    RationalVector v(r.size());
    std::size_t i = 0;
    for (long x : r) v[i++] = Rational(x);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<LatticePoint> lattice(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<LatticePoint> out;
  for (const auto& r : rows) out.push_back({std::vector<std::int64_t>(r.begin(), r.end())});
  return out;
}

inline Rational frac(long n, long d) { return Rational(Integer(n), Integer(d)); }

}  // namespace kissing::testing
