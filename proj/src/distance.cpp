#include "kissing/distance.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "kissing/linalg.hpp"
#include "kissing/minnorm.hpp"

namespace kissing {

namespace {

void check_inputs(std::span<const RationalVector> vp, std::span<const RationalVector> vq) {
  if (vp.empty() || vq.empty()) throw PreconditionError("distance between empty vertex sets");
  const std::size_t d = vp[0].dim();
  for (const auto& v : vp)
    if (v.dim() != d) throw DimensionError("VP has points of mixed dimension");
  for (const auto& v : vq)
    if (v.dim() != d) throw DimensionError("VQ has points of mixed dimension from VP");
}

struct PairSolution {
  std::vector<Rational> lambda;
  std::vector<Rational> mu;
  RationalVector p;
  RationalVector q;
};

// Closest points of aff(S_P) and aff(S_Q), provided the edge vectors of both
// subsets are jointly linearly independent (otherwise nullopt).
std::optional<PairSolution> solve_pair(std::span<const RationalVector> vp,
                                       std::span<const RationalVector> vq,
                                       const std::vector<std::size_t>& sp,
                                       const std::vector<std::size_t>& sq) {
  const RationalVector& s0 = vp[sp[0]];
  const RationalVector& t0 = vq[sq[0]];
  std::vector<RationalVector> cols;
  for (std::size_t i = 1; i < sp.size(); ++i) cols.push_back(vp[sp[i]] - s0);
  for (std::size_t j = 1; j < sq.size(); ++j) cols.push_back(t0 - vq[sq[j]]);
  const RationalVector w0 = s0 - t0;

  PairSolution sol;
  RationalVector y;
  if (!cols.empty()) {
    RationalMatrix g = gram(cols);
    RationalVector rhs(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) rhs[i] = -cols[i].dot(w0);
    auto s = solve_unique(g, rhs);
    if (!s) return std::nullopt;
    y = std::move(*s);
  }
  const std::size_t a = sp.size() - 1;
  Rational sum_a = 0, sum_b = 0;
  sol.p = s0;
  sol.q = t0;
  sol.lambda.assign(sp.size(), Rational(0));
  sol.mu.assign(sq.size(), Rational(0));
  for (std::size_t i = 0; i < a; ++i) {
    sol.lambda[i + 1] = y[i];
    sum_a += y[i];
    sol.p += cols[i] * y[i];
  }
  for (std::size_t j = 0; j + 1 < sq.size(); ++j) {
    sol.mu[j + 1] = y[a + j];
    sum_b += y[a + j];
    sol.q -= cols[a + j] * y[a + j];
  }
  sol.lambda[0] = Rational(1) - sum_a;
  sol.mu[0] = Rational(1) - sum_b;
  return sol;
}

bool edges_independent(std::span<const RationalVector> pts, const std::vector<std::size_t>& idx) {
  std::vector<RationalVector> e;
  for (std::size_t i = 1; i < idx.size(); ++i) e.push_back(pts[idx[i]] - pts[idx[0]]);
  return rank(e) == e.size();
}

bool jointly_independent(std::span<const RationalVector> vp, std::span<const RationalVector> vq,
                         const std::vector<std::size_t>& sp, const std::vector<std::size_t>& sq) {
  std::vector<RationalVector> e;
  for (std::size_t i = 1; i < sp.size(); ++i) e.push_back(vp[sp[i]] - vp[sp[0]]);
  for (std::size_t j = 1; j < sq.size(); ++j) e.push_back(vq[sq[j]] - vq[sq[0]]);
  return rank(e) == e.size();
}

// Depth-first walk over affinely independent subsets of `pool` in
// lexicographic order of their sorted index lists. `visit` returns true to
// stop the walk; `accept` prunes subtrees (it must be inherited by subsets).
bool walk_subsets(const std::vector<std::size_t>& pool, std::vector<std::size_t>& current,
                  std::size_t start, const std::function<bool(const std::vector<std::size_t>&)>& accept,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  for (std::size_t i = start; i < pool.size(); ++i) {
    current.push_back(pool[i]);
    if (accept(current)) {
      if (visit(current)) return true;
      if (walk_subsets(pool, current, i + 1, accept, visit)) return true;
    }
    current.pop_back();
  }
  return false;
}

// Carathéodory reduction: rewrites sum coeffs_i pts[idx_i] with an affinely
// independent support and strictly positive coefficients.
void caratheodory_reduce(std::span<const RationalVector> pts, std::vector<std::size_t>& idx,
                         std::vector<Rational>& coeffs) {
  for (;;) {
    const std::size_t n = idx.size();
    const std::size_t d = pts[0].dim();
    RationalMatrix a(d + 1, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < d; ++i) a(i, j) = pts[idx[j]][i];
      a(d, j) = 1;
    }
    auto gamma = kernel_vector(a);
    if (!gamma) return;
    bool any_pos = std::any_of(gamma->begin(), gamma->end(), [](const Rational& g) { return g.sign() > 0; });
    if (!any_pos) *gamma *= Rational(-1);
    std::optional<Rational> t;
    for (std::size_t j = 0; j < n; ++j) {
      if ((*gamma)[j].sign() <= 0) continue;
      Rational r = coeffs[j] / (*gamma)[j];
      if (!t || r < *t) t = std::move(r);
    }
    std::vector<std::size_t> next_idx;
    std::vector<Rational> next_c;
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = coeffs[j] - *t * (*gamma)[j];
      if (c.sign() > 0) {
        next_idx.push_back(idx[j]);
        next_c.push_back(std::move(c));
      }
    }
    idx = std::move(next_idx);
    coeffs = std::move(next_c);
  }
}

DistanceCertificate certificate_from_wolfe(std::span<const RationalVector> vp,
                                           std::span<const RationalVector> vq,
                                           const MinNormPoint& mn) {
  std::vector<Rational> lp(vp.size()), lq(vq.size());
  for (std::size_t a = 0; a < mn.active.size(); ++a) {
    lp[mn.active[a] / vq.size()] += mn.weights[a];
    lq[mn.active[a] % vq.size()] += mn.weights[a];
  }
  DistanceCertificate c;
  for (std::size_t i = 0; i < vp.size(); ++i)
    if (lp[i].sign() > 0) {
      c.activeP.push_back(i);
      c.lambdaP.push_back(lp[i]);
    }
  for (std::size_t j = 0; j < vq.size(); ++j)
    if (lq[j].sign() > 0) {
      c.activeQ.push_back(j);
      c.lambdaQ.push_back(lq[j]);
    }
  caratheodory_reduce(vp, c.activeP, c.lambdaP);
  caratheodory_reduce(vq, c.activeQ, c.lambdaQ);
  c.p = RationalVector(vp[0].dim());
  c.q = RationalVector(vp[0].dim());
  for (std::size_t i = 0; i < c.activeP.size(); ++i) c.p += vp[c.activeP[i]] * c.lambdaP[i];
  for (std::size_t j = 0; j < c.activeQ.size(); ++j) c.q += vq[c.activeQ[j]] * c.lambdaQ[j];
  c.distSq = (c.p - c.q).norm_sq();
  return c;
}

bool all_positive(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() > 0; });
}

// Lexicographically smallest certificate with jointly independent supports,
// searched inside the optimal faces {u : x.u minimal} and {v : x.v maximal}.
std::optional<DistanceCertificate> canonical_certificate(std::span<const RationalVector> vp,
                                                         std::span<const RationalVector> vq,
                                                         const RationalVector& x,
                                                         const Rational& dist_sq) {
  auto extremal = [&](std::span<const RationalVector> pts, bool minimize) {
    std::vector<Rational> vals;
    for (const auto& v : pts) vals.push_back(x.dot(v));
    const Rational target = minimize ? *std::min_element(vals.begin(), vals.end())
                                     : *std::max_element(vals.begin(), vals.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (vals[i] == target) out.push_back(i);
    return out;
  };
  const auto face_p = extremal(vp, true);
  const auto face_q = extremal(vq, false);
  if (face_p.size() + face_q.size() > kEnumerationVertexCap) return std::nullopt;

  std::optional<DistanceCertificate> found;
  std::vector<std::size_t> sp, sq;
  walk_subsets(
      face_p, sp, 0, [&](const auto& s) { return edges_independent(vp, s); },
      [&](const std::vector<std::size_t>& cur_p) {
        sq.clear();
        return walk_subsets(
            face_q, sq, 0, [&](const auto& s) { return jointly_independent(vp, vq, cur_p, s); },
            [&](const std::vector<std::size_t>& cur_q) {
              auto sol = solve_pair(vp, vq, cur_p, cur_q);
              if (!sol || !all_positive(sol->lambda) || !all_positive(sol->mu)) return false;
              if ((sol->p - sol->q).norm_sq() != dist_sq) return false;
              found = DistanceCertificate{sol->p, sol->q, cur_p, cur_q, sol->lambda, sol->mu, dist_sq};
              return true;
            });
      });
  return found;
}

}  // namespace

DistanceResult min_distance_sq(std::span<const RationalVector> vp, std::span<const RationalVector> vq) {
  check_inputs(vp, vq);
  std::vector<RationalVector> diff;
  diff.reserve(vp.size() * vq.size());
  for (const auto& u : vp)
    for (const auto& v : vq) diff.push_back(u - v);
  const MinNormPoint mn = min_norm_point(diff);
  const Rational dist_sq = mn.x.norm_sq();
  if (auto c = canonical_certificate(vp, vq, mn.x, dist_sq)) return {dist_sq, std::move(*c)};
  DistanceCertificate c = certificate_from_wolfe(vp, vq, mn);
  return {dist_sq, std::move(c)};
}

DistanceResult min_distance_sq(std::span<const LatticePoint> vp, std::span<const LatticePoint> vq) {
  const auto rp = to_rational(vp);
  const auto rq = to_rational(vq);
  return min_distance_sq(rp, rq);
}

Rational enumerate_distance_sq(std::span<const RationalVector> vp, std::span<const RationalVector> vq) {
  check_inputs(vp, vq);
  if (vp.size() + vq.size() > kEnumerationVertexCap)
    throw ScopeError("active-subset enumeration limited to " + std::to_string(kEnumerationVertexCap) +
                     " vertices in total");
  std::vector<std::size_t> all_p(vp.size()), all_q(vq.size());
  for (std::size_t i = 0; i < vp.size(); ++i) all_p[i] = i;
  for (std::size_t j = 0; j < vq.size(); ++j) all_q[j] = j;
  std::optional<Rational> best;
  std::vector<std::size_t> sp, sq;
  walk_subsets(
      all_p, sp, 0, [&](const auto& s) { return edges_independent(vp, s); },
      [&](const std::vector<std::size_t>& cur_p) {
        sq.clear();
        walk_subsets(
            all_q, sq, 0, [&](const auto& s) { return jointly_independent(vp, vq, cur_p, s); },
            [&](const std::vector<std::size_t>& cur_q) {
              auto sol = solve_pair(vp, vq, cur_p, cur_q);
              if (!sol) return false;
              auto nonneg = [](const std::vector<Rational>& v) {
                return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() >= 0; });
              };
              if (!nonneg(sol->lambda) || !nonneg(sol->mu)) return false;
              Rational d = (sol->p - sol->q).norm_sq();
              if (!best || d < *best) best = std::move(d);
              return false;
            });
        return false;
      });
  return *best;  // singleton pairs always qualify
}

CertificateCheck verify_certificate(const DistanceCertificate& cert, std::span<const RationalVector> vp,
                                    std::span<const RationalVector> vq) {
  auto fail = [](std::string msg) { return CertificateCheck{false, std::move(msg)}; };
  if (vp.empty() || vq.empty()) return fail("empty vertex set");
  const std::size_t d = vp[0].dim();
  if (cert.p.dim() != d || cert.q.dim() != d) return fail("dimension mismatch");
  auto check_side = [&](std::span<const RationalVector> pts, const std::vector<std::size_t>& active,
                        const std::vector<Rational>& lambda, const RationalVector& point,
                        const char* name) -> std::optional<CertificateCheck> {
    if (active.empty() || active.size() != lambda.size())
      return fail(std::string("dimension mismatch in active") + name);
    std::vector<RationalVector> sub;
    for (auto i : active) {
      if (i >= pts.size()) return fail(std::string("active") + name + " index out of range");
      sub.push_back(pts[i]);
    }
    if (!affinely_independent(sub)) return fail(std::string("active") + name + " not affinely independent");
    Rational sum = 0;
    RationalVector combo(d);
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (lambda[i].sign() <= 0) return fail(std::string("barycentric violation: lambda") + name + " not positive");
      sum += lambda[i];
      combo += sub[i] * lambda[i];
    }
    if (sum != Rational(1)) return fail(std::string("barycentric violation: lambda") + name + " does not sum to 1");
    if (combo != point) return fail(std::string("barycentric violation: point ") + name + " differs from combination");
    return std::nullopt;
  };
  if (auto f = check_side(vp, cert.activeP, cert.lambdaP, cert.p, "P")) return *f;
  if (auto f = check_side(vq, cert.activeQ, cert.lambdaQ, cert.q, "Q")) return *f;
  const RationalVector gap = cert.p - cert.q;
  if (gap.norm_sq() != cert.distSq) return fail("distSq mismatch");
  for (std::size_t i = 0; i < vp.size(); ++i)
    if ((vp[i] - cert.p).dot(gap).sign() < 0)
      return fail("optimality violation at P vertex " + std::to_string(i));
  for (std::size_t j = 0; j < vq.size(); ++j)
    if ((vq[j] - cert.q).dot(gap).sign() > 0)
      return fail("optimality violation at Q vertex " + std::to_string(j));
  return {};
}

CramerSystem make_cramer_system(RationalVector w0, std::vector<RationalVector> W) {
  for (const auto& w : W)
    if (w.dim() != w0.dim()) throw DimensionError("Cramer system with mixed dimensions");
  if (rank(W) != W.size()) throw PreconditionError("Cramer system needs linearly independent W");
  CramerSystem s;
  s.M = gram(W);
  s.b = RationalVector(W.size());
  for (std::size_t i = 0; i < W.size(); ++i) s.b[i] = w0.dot(W[i]);
  s.a = w0 * det(s.M);
  for (std::size_t i = 0; i < W.size(); ++i) {
    RationalMatrix mi = s.M;
    for (std::size_t r = 0; r < W.size(); ++r) mi(r, i) = s.b[r];
    s.a -= W[i] * det(mi);
  }
  s.w0 = std::move(w0);
  s.W = std::move(W);
  return s;
}

CramerSystem cramer_system_from_certificate(const DistanceCertificate& cert,
                                            std::span<const RationalVector> vp,
                                            std::span<const RationalVector> vq) {
  const RationalVector& u0 = vp[cert.activeP.at(0)];
  const RationalVector& v0 = vq[cert.activeQ.at(0)];
  std::vector<RationalVector> edges;
  for (std::size_t i = 1; i < cert.activeP.size(); ++i) edges.push_back(vp[cert.activeP[i]] - u0);
  for (std::size_t j = 1; j < cert.activeQ.size(); ++j) edges.push_back(vq[cert.activeQ[j]] - v0);
  std::vector<RationalVector> w;
  for (auto i : independent_subset(edges)) w.push_back(edges[i]);
  return make_cramer_system(u0 - v0, std::move(w));
}

Rational cramer_distance_sq(const CramerSystem& sys) {
  if (sys.a.is_zero()) throw DegenerateError("a = 0: w0 lies in the span of W");
  const Rational num = sys.w0.dot(sys.a);
  return num * num / sys.a.norm_sq();
}

Rational affine_hull_distance_sq(const RationalVector& x, std::span<const RationalVector> points) {
  std::vector<RationalVector> edges;
  for (std::size_t i = 1; i < points.size(); ++i) edges.push_back(points[i] - points[0]);
  std::vector<RationalVector> basis;
  for (auto i : independent_subset(edges)) basis.push_back(edges[i]);
  RationalVector r = x - points[0];
  if (!basis.empty()) {
    RationalVector rhs(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) rhs[i] = basis[i].dot(r);
    auto c = solve_unique(gram(basis), rhs);
    for (std::size_t i = 0; i < basis.size(); ++i) r -= basis[i] * (*c)[i];
  }
  return r.norm_sq();
}

namespace {

void split(std::span<const RationalVector> vertices, const Face& f, std::vector<RationalVector>& in,
           std::vector<RationalVector>& out) {
  std::size_t next = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (next < f.vertices.size() && f.vertices[next] == i) {
      in.push_back(vertices[i]);
      ++next;
    } else {
      out.push_back(vertices[i]);
    }
  }
}

}  // namespace

FaceDistance facial_distance(std::span<const RationalVector> vertices, std::size_t vertex_cap) {
  if (vertices.size() < 2) throw PreconditionError("facial distance needs at least two vertices");
  std::optional<FaceDistance> best;
  for (const Face& f : proper_faces(vertices, vertex_cap)) {
    std::vector<RationalVector> in, out;
    split(vertices, f, in, out);
    Rational d = min_distance_sq(in, out).distSq;
    if (!best || d < best->distSq) best = FaceDistance{std::move(d), f};
  }
  return *best;
}

FaceDistance facial_distance(const LatticePolytope& p, std::size_t vertex_cap) {
  const auto rat = p.rational_vertices();
  return facial_distance(rat, vertex_cap);
}

FaceDistance vertex_facet_distance(std::span<const RationalVector> vertices, std::size_t vertex_cap) {
  if (vertices.empty() || affine_rank(vertices) < 1)
    throw PreconditionError("vertex-facet distance needs a polytope of dimension >= 1");
  std::optional<FaceDistance> best;
  for (const Face& f : proper_faces(vertices, vertex_cap)) {
    if (!f.facet) continue;
    std::vector<RationalVector> in, out;
    split(vertices, f, in, out);
    for (const auto& v : out) {
      Rational d = affine_hull_distance_sq(v, in);
      if (!best || d < best->distSq) best = FaceDistance{std::move(d), f};
    }
  }
  return *best;
}

FaceDistance vertex_facet_distance(const LatticePolytope& p, std::size_t vertex_cap) {
  const auto rat = p.rational_vertices();
  return vertex_facet_distance(rat, vertex_cap);
}

}  // namespace kissing
