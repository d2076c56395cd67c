#include "kissing/constructions.hpp"

#include <cmath>

#include "kissing/linalg.hpp"

namespace kissing {

namespace {

Rational rpow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void require_spec(const ConstructionSpec& s) {
  if (s.delta < 3) throw PreconditionError("construction needs delta >= 3");
  if (s.sigma < 1) throw PreconditionError("construction needs sigma >= 1");
  if (s.k < 1) throw PreconditionError("construction needs k >= 1");
}

// Generators of lifted column i (1-based). For P the first block never gets
// the 1 at position s; for Q it does.
std::vector<LatticePoint> column_generators(const ConstructionSpec& s, int i, bool forQ) {
  const int d = s.dimension();
  if (i == 1 && !forQ) return {LatticePoint{std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)}};
  std::vector<LatticePoint> out;
  for (int pos = 1; pos <= s.delta; ++pos) {
    std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
    for (int j = 1; j <= d; ++j) {
      const int r = (j - 1) % s.delta + 1;
      const int lo = forQ ? 1 : s.delta + 1;
      if (j <= s.delta * (i - 1) && r != pos)
        x[static_cast<std::size_t>(j - 1)] = s.k;
      else if (j >= lo && j <= s.delta * i && r == pos)
        x[static_cast<std::size_t>(j - 1)] = 1;
    }
    out.push_back({std::move(x)});
  }
  return out;
}

RationalVector lifted_a(const std::vector<Integer>& a, int delta) {
  RationalVector small(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) small[i] = Rational(a[i]);
  return lift(small, delta);
}

}  // namespace

RationalVector lift(const RationalVector& x, int delta) {
  if (delta < 1) throw PreconditionError("lift needs delta >= 1");
  RationalVector out(x.dim() * static_cast<std::size_t>(delta));
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] = x[i / static_cast<std::size_t>(delta)];
  return out;
}

Rational construction_theta(const ConstructionSpec& s) {
  require_spec(s);
  const Rational m(Integer(static_cast<long>(s.k * (1 - s.delta))));
  const Rational den = rpow(m, s.sigma) - Rational(1);
  if (den.is_zero()) throw PreconditionError("construction theta has a zero denominator");
  return (m - Rational(1)) * rpow(m, s.sigma - 1) / den;
}

ConstructionOutput build_construction(const ConstructionSpec& s) {
  require_spec(s);
  ConstructionOutput out;
  out.spec = s;
  out.d = s.dimension();
  out.convexityGuaranteed = s.delta >= 4;
  const int n = s.sigma + 1;
  const auto un = static_cast<std::size_t>(n);
  const std::int64_t K = s.k * (s.delta - 1);
  const Rational Kr(Integer(static_cast<long>(K)));

  Integer ai = 1;
  for (int i = 0; i < n; ++i) {
    out.aVec.push_back(ai);
    ai *= -K;
  }

  const Rational A = Rational(Integer(static_cast<long>(K)), Integer(s.delta));
  const Rational B = Rational(Integer(1), Integer(s.delta));
  const Rational C = A + B;
  out.MP = RationalMatrix(un, un);
  for (std::size_t col = 1; col < un; ++col) {
    out.MP(0, col) = A;
    for (std::size_t row = 1; row < col; ++row) out.MP(row, col) = C;
    out.MP(col, col) = B;
  }
  out.MQ = out.MP;
  for (std::size_t col = 0; col < un; ++col) out.MQ(0, col) += B;

  out.theta = construction_theta(s);
  const Rational& th = out.theta;
  const Rational S = (rpow(Kr, s.sigma) - Rational(1)) / ((Kr - Rational(1)) * rpow(Kr, s.sigma));
  out.coeffP.push_back(Rational(1) - th * S);
  out.coeffQ.push_back((Kr + Rational(1)) / Kr - th * S);
  out.coeffQSumForm.push_back(out.coeffQ.front());
  for (int i = 1; i <= s.sigma; ++i) {
    const Rational Ki = rpow(Kr, i);
    out.coeffP.push_back(th / Ki);
    out.coeffQ.push_back(th * Rational(i % 2 == 0 ? 2 : 0) / Ki);
    out.coeffQSumForm.push_back(th / Ki + th / rpow(-Kr, i));
  }

  out.pSmall = out.MP * RationalVector(out.coeffP);
  out.qSmall = out.MQ * RationalVector(out.coeffQ);
  out.pLift = lift(out.pSmall, s.delta);
  out.qLift = lift(out.qSmall, s.delta);
  for (int i = 1; i <= n; ++i) {
    out.generatorsP.push_back(column_generators(s, i, false));
    out.generatorsQ.push_back(column_generators(s, i, true));
  }
  return out;
}

ConstructionCheck verify_construction(const ConstructionOutput& out) {
  ConstructionCheck chk;
  auto fail = [&](std::string msg) {
    chk.ok = false;
    chk.failures.push_back(std::move(msg));
  };
  const auto& s = out.spec;
  const RationalVector abar = lifted_a(out.aVec, s.delta);
  const std::size_t n = out.aVec.size();

  for (int side = 0; side < 2; ++side) {
    const auto& gens = side == 0 ? out.generatorsP : out.generatorsQ;
    const auto& M = side == 0 ? out.MP : out.MQ;
    const auto& coeff = side == 0 ? out.coeffP : out.coeffQ;
    const Rational level = side;
    const char* name = side == 0 ? "P" : "Q";
    RationalVector combined(static_cast<std::size_t>(out.d));
    for (std::size_t col = 0; col < n; ++col) {
      const auto rat = to_rational(gens[col]);
      for (const auto& g : gens[col]) {
        for (auto c : g.coords)
          if (c < 0 || c > s.k) fail(std::string(name) + " generator outside the box: " + g.to_string());
        if (abar.dot(g.to_rational()) != level)
          fail(std::string(name) + " generator off its hyperplane: " + g.to_string());
      }
      const RationalVector target = lift(M.column(col), s.delta);
      const Rational w = Rational(1) / Rational(static_cast<long>(rat.size()));
      if (affinely_independent(rat)) {
        auto bary = barycentric_membership(target, rat);
        for (const auto& l : bary.coefficients)
          if (l != w) {
            fail(std::string(name) + " column " + std::to_string(col + 1) + " is not the generator barycenter");
            break;
          }
        if (bary.coefficients.empty())
          fail(std::string(name) + " column " + std::to_string(col + 1) + " is outside the generator hull");
      } else {
        RationalVector mean(target.dim());
        for (const auto& r : rat) mean += r * w;
        if (mean != target)
          fail(std::string(name) + " column " + std::to_string(col + 1) + " is not the generator barycenter");
      }
      combined += target * coeff[col];
    }
    if (combined != (side == 0 ? out.pLift : out.qLift)) fail(std::string(name) + " lift does not match the column combination");

    Rational sum = 0;
    for (const auto& c : coeff) sum += c;
    if (sum != Rational(1)) fail(std::string(name) + " coefficients do not sum to 1");
    if (out.convexityGuaranteed)
      for (const auto& c : coeff)
        if (c.sign() < 0) fail(std::string(name) + " coefficient is negative");
  }

  if (out.coeffQ != out.coeffQSumForm) fail("q coefficient forms disagree");

  const RationalVector diff = out.qSmall - out.pSmall;
  if (!diff[0].is_zero()) fail("first coordinate of q - p is not 0");
  const Rational m(Integer(static_cast<long>(s.k * (1 - s.delta))));
  const Rational expected = out.theta / (Rational(s.delta) * rpow(m, s.sigma));
  const Rational gapBound = Rational(1) / rpow(Rational(static_cast<long>(s.k * (s.delta - 1))), s.sigma);
  for (std::size_t j = 1; j < n; ++j) {
    if (diff[j] != expected) fail("q_" + std::to_string(j + 1) + " - p_" + std::to_string(j + 1) + " differs from its closed form");
    if (out.convexityGuaranteed && abs(diff[j]) > gapBound)
      fail("|q_" + std::to_string(j + 1) + " - p_" + std::to_string(j + 1) + "| exceeds its bound");
  }

  chk.liftDistSq = (out.qLift - out.pLift).norm_sq();
  chk.boundSq = Rational(static_cast<long>(s.delta) * s.sigma) /
                rpow(Rational(static_cast<long>(s.k * (s.delta - 1))), 2 * s.sigma);
  if (out.convexityGuaranteed && chk.liftDistSq > chk.boundSq) fail("lifted distance exceeds the bound");
  if (chk.liftDistSq != Rational(s.delta) * diff.norm_sq()) fail("lift does not scale distances by delta");
  return chk;
}

std::pair<int, int> floor_parameters(int d, double beta) {
  if (!(beta > 0 && beta < 1)) throw PreconditionError("floor_parameters needs 0 < beta < 1");
  const int sigma = static_cast<int>(std::floor(std::pow(static_cast<double>(d), beta)));
  return {sigma, d / (sigma + 1)};
}

Witness witness_diagonal(int d) {
  if (d < 2) throw PreconditionError("witness_diagonal needs d >= 2");
  const auto n = static_cast<std::size_t>(d);
  Witness w;
  w.P.push_back({std::vector<std::int64_t>(n, 0)});
  w.P.push_back({std::vector<std::int64_t>(n, 1)});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    w.Q.push_back({std::move(e)});
  }
  w.claimedDistSq = Rational(Integer(1), Integer(static_cast<long>(d) * (d - 1)));
  return w;
}

Witness witness_near_corner(int d, std::int64_t k) {
  if (d < 2 || k < 2) throw PreconditionError("witness_near_corner needs d >= 2 and k >= 2");
  const auto n = static_cast<std::size_t>(d);
  Witness w;
  w.P.push_back({std::vector<std::int64_t>(n, 1)});
  w.Q.push_back({std::vector<std::int64_t>(n, 0)});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::int64_t> x(n, k);
    x[i] = k - 1;
    w.Q.push_back({std::move(x)});
  }
  const Integer dk = Integer(static_cast<long>(d - 1)) * k;
  w.claimedDistSq = Rational(Integer(1), dk * k + (dk - 1) * (dk - 1));
  return w;
}

std::vector<std::pair<int, std::int64_t>> catalog_entries() {
  return {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {5, 1}};
}

Witness witness_catalog(int d, std::int64_t k) {
  using V = std::vector<std::int64_t>;
  auto pts = [](std::initializer_list<V> rows) {
    std::vector<LatticePoint> out;
    for (const auto& r : rows) out.push_back({r});
    return out;
  };
  auto r = [](long num, long den) { return Rational(Integer(num), Integer(den)); };
  if (d == 2 && k == 1) return {pts({{0, 0}}), pts({{1, 0}, {0, 1}}), r(1, 2)};
  if (d == 2 && k == 2) return {pts({{0, 1}}), pts({{0, 0}, {1, 2}}), r(1, 5)};
  if (d == 2 && k >= 3 && k <= 6)
    return {pts({{1, 1}}), pts({{0, 0}, {k - 1, k}}), r(1, static_cast<long>((k - 1) * (k - 1) + k * k))};
  if (d == 3 && k == 1) return {pts({{0, 0, 0}, {1, 1, 1}}), pts({{1, 0, 0}, {0, 1, 0}}), r(1, 6)};
  if (d == 3 && k == 2) return {pts({{0, 0, 0}, {1, 2, 2}}), pts({{0, 1, 2}, {2, 2, 1}}), r(1, 50)};
  if (d == 3 && k == 3) return {pts({{0, 0, 0}, {2, 3, 3}}), pts({{0, 1, 2}, {3, 2, 0}}), r(1, 299)};
  if (d == 4 && k == 1)
    return {pts({{0, 0, 0, 0}, {1, 1, 1, 1}}), pts({{0, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}}), r(1, 18)};
  if (d == 5 && k == 1)
    return {pts({{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}}),
            pts({{0, 0, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 1, 1, 1, 0}, {1, 1, 0, 0, 0}}), r(1, 58)};
  throw NotInCatalogError("no catalog witness for d=" + std::to_string(d) + ", k=" + std::to_string(k));
}

}  // namespace kissing
