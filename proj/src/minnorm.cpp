#include "kissing/minnorm.hpp"

#include <algorithm>
#include <numeric>

#include "kissing/linalg.hpp"

namespace kissing {

namespace {

// Affine minimizer of aff{points[i] : i in corral}: coefficients alpha with
// sum 1 minimizing |sum alpha_i p_i|^2. Solves [G 1; 1^T 0][alpha; mu] = [0; 1].
std::vector<Rational> affine_minimizer(std::span<const RationalVector> points,
                                       const std::vector<std::size_t>& corral) {
  const std::size_t n = corral.size();
  RationalMatrix sys(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      sys(i, j) = points[corral[i]].dot(points[corral[j]]);
      sys(j, i) = sys(i, j);
    }
    sys(i, n) = 1;
    sys(n, i) = 1;
  }
  RationalVector rhs(n + 1);
  rhs[n] = 1;
  auto sol = solve_unique(sys, rhs);
  if (!sol) throw std::logic_error("min_norm_point: corral lost affine independence");
  return {sol->coords().begin(), sol->coords().begin() + static_cast<std::ptrdiff_t>(n)};
}

RationalVector combine(std::span<const RationalVector> points, const std::vector<std::size_t>& idx,
                       const std::vector<Rational>& w) {
  RationalVector x(points[0].dim());
  for (std::size_t i = 0; i < idx.size(); ++i) x += points[idx[i]] * w[i];
  return x;
}

}  // namespace

MinNormPoint min_norm_point(std::span<const RationalVector> points) {
  if (points.empty()) throw PreconditionError("min_norm_point of an empty set");
  const std::size_t dim = points[0].dim();
  for (const auto& p : points)
    if (p.dim() != dim) throw DimensionError("min_norm_point: mixed dimensions");

  std::size_t start = 0;
  Rational best = points[0].norm_sq();
  for (std::size_t j = 1; j < points.size(); ++j) {
    Rational n = points[j].norm_sq();
    if (n < best) {
      best = std::move(n);
      start = j;
    }
  }
  std::vector<std::size_t> corral{start};
  std::vector<Rational> w{Rational(1)};
  RationalVector x = points[start];

  while (!x.is_zero()) {
    const Rational xx = x.norm_sq();
    std::size_t j = 0;
    Rational lowest = x.dot(points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
      Rational v = x.dot(points[i]);
      if (v < lowest) {
        lowest = std::move(v);
        j = i;
      }
    }
    if (lowest >= xx) break;  // x.p >= |x|^2 for all p: optimal
    corral.push_back(j);
    w.push_back(0);

    for (;;) {
      std::vector<Rational> alpha = affine_minimizer(points, corral);
      const bool interior =
          std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a.sign() > 0; });
      if (interior) {
        w = std::move(alpha);
        x = combine(points, corral, w);
        break;
      }
      // Largest step toward alpha keeping all weights nonnegative.
      std::optional<Rational> theta;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (alpha[i].sign() > 0) continue;
        const Rational gap = w[i] - alpha[i];
        Rational t = gap.is_zero() ? Rational(0) : w[i] / gap;
        if (!theta || t < *theta) theta = std::move(t);
      }
      std::vector<std::size_t> next_corral;
      std::vector<Rational> next_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        Rational wi = w[i] + *theta * (alpha[i] - w[i]);
        if (wi.sign() > 0) {
          next_corral.push_back(corral[i]);
          next_w.push_back(std::move(wi));
        }
      }
      corral = std::move(next_corral);
      w = std::move(next_w);
      x = combine(points, corral, w);
    }
  }

  MinNormPoint r;
  r.x = std::move(x);
  std::vector<std::size_t> order(corral.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return corral[a] < corral[b]; });
  for (auto o : order) {
    r.active.push_back(corral[o]);
    r.weights.push_back(w[o]);
  }
  return r;
}

bool in_convex_hull(const RationalVector& x, std::span<const RationalVector> points) {
  if (points.empty()) return false;
  std::vector<RationalVector> shifted;
  shifted.reserve(points.size());
  for (const auto& p : points) shifted.push_back(p - x);
  return min_norm_point(shifted).x.is_zero();
}

}  // namespace kissing
