#include "kissing/epsilon.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "kissing/bounds.hpp"
#include "kissing/linalg.hpp"

namespace kissing {

namespace {

using I128 = __int128;
using Row = std::array<I128, kMaxSymmetryDim>;

I128 iabs(I128 x) { return x < 0 ? -x : x; }

I128 igcd(I128 a, I128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int int_rank(std::vector<Row> rows, int d) {
  int rank = 0;
  for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][static_cast<std::size_t>(col)] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const Row& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      const I128 f = rows[i][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      const I128 pc = p[static_cast<std::size_t>(col)];
      I128 g = 0;
      for (int j = 0; j < d; ++j) {
        auto& x = rows[i][static_cast<std::size_t>(j)];
        x = x * pc - p[static_cast<std::size_t>(j)] * f;
        g = igcd(g, x);
      }
      if (g > 1)
        for (int j = 0; j < d; ++j) rows[i][static_cast<std::size_t>(j)] /= g;
    }
    ++rank;
  }
  return rank;
}

// Bareiss determinant of an n x n integer matrix.
I128 int_det(std::vector<Row> m, int n) {
  if (n == 0) return 1;
  I128 sign = 1, prev = 1;
  for (int c = 0; c < n - 1; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    if (m[uc][uc] == 0) {
      std::size_t r = uc + 1;
      while (r < static_cast<std::size_t>(n) && m[r][uc] == 0) ++r;
      if (r == static_cast<std::size_t>(n)) return 0;
      std::swap(m[r], m[uc]);
      sign = -sign;
    }
    for (std::size_t i = uc + 1; i < static_cast<std::size_t>(n); ++i)
      for (std::size_t j = uc + 1; j < static_cast<std::size_t>(n); ++j)
        m[i][j] = (m[i][j] * m[uc][uc] - m[i][uc] * m[uc][j]) / prev;
    prev = m[uc][uc];
  }
  return sign * m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

// Cofactor normal of d-1 vectors in dimension d: n.x = det([x; dirs]).
Row cofactor_normal(const std::vector<Row>& dirs, int d) {
  Row n{};
  for (int i = 0; i < d; ++i) {
    std::vector<Row> minor(dirs.size());
    for (std::size_t r = 0; r < dirs.size(); ++r)
      for (int j = 0, jj = 0; j < d; ++j)
        if (j != i) minor[r][static_cast<std::size_t>(jj++)] = dirs[r][static_cast<std::size_t>(j)];
    const I128 m = int_det(std::move(minor), d - 1);
    n[static_cast<std::size_t>(i)] = (i % 2 == 0) ? m : -m;
  }
  return n;
}

I128 idot(const Row& a, const Row& b, int d) {
  I128 s = 0;
  for (int i = 0; i < d; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

Integer to_integer(I128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  Integer r = hi * Integer("18446744073709551616") + lo;
  return neg ? Integer(-r) : r;
}

Rational ratio(I128 num, I128 den) { return Rational(to_integer(num), to_integer(den)); }

struct Geometry {
  const PointGroup& g;
  int d;
  Row row(std::uint32_t idx) const {
    Row r{};
    const auto& c = g.coords(idx);
    for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    return r;
  }
  Row diff(std::uint32_t a, std::uint32_t b) const {
    Row r = row(a), s = row(b);
    for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i)];
    return r;
  }
  std::vector<Row> directions(const PointSet& s) const {
    std::vector<Row> out;
    for (std::size_t i = 1; i < s.size(); ++i) out.push_back(diff(s[i], s[0]));
    return out;
  }
};

bool affinely_independent_set(const Geometry& geo, const PointSet& s) {
  return int_rank(geo.directions(s), geo.d) + 1 == static_cast<int>(s.size());
}

struct HullInfo {
  bool disjoint = false;
  bool independent = false;  // joint directions span a hyperplane
  Row normal{};
  I128 gap = 0;              // normal . (q0 - p0)
};

HullInfo hull_info(const Geometry& geo, const PointSet& sp, const PointSet& sq) {
  std::vector<Row> dirs = geo.directions(sp);
  for (auto& r : geo.directions(sq)) dirs.push_back(r);
  const Row w0 = geo.diff(sq[0], sp[0]);
  HullInfo h;
  h.normal = cofactor_normal(dirs, geo.d);
  h.gap = idot(h.normal, w0, geo.d);
  bool nonzero = false;
  for (int i = 0; i < geo.d; ++i) nonzero |= h.normal[static_cast<std::size_t>(i)] != 0;
  if (nonzero) {
    h.independent = true;
    h.disjoint = h.gap != 0;
    return h;
  }
  const int base = int_rank(dirs, geo.d);
  dirs.push_back(w0);
  h.disjoint = int_rank(dirs, geo.d) > base;
  return h;
}

template <class F>
void for_each_subset(std::uint32_t n, std::size_t m, F&& f) {
  if (m > n || m == 0) return;
  PointSet idx(m);
  std::iota(idx.begin(), idx.end(), 0u);
  for (;;) {
    f(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<RationalVector> rational_points(const PointGroup& g, const PointSet& s) {
  std::vector<RationalVector> out;
  for (auto i : s) out.push_back(LatticePoint{g.coords(i)}.to_rational());
  return out;
}

}  // namespace

SearchSpace::SearchSpace(int d, std::int64_t k, bool symmetry, std::uint64_t cap)
    : group_(d, k, cap), symmetry_(symmetry) {
  const Geometry geo{group_, d};
  for (int r = 0; r <= (d - 1) / 2; ++r) {
    for_each_subset(group_.point_count(), static_cast<std::size_t>(r + 1), [&](const PointSet& s) {
      if (!affinely_independent_set(geo, s)) return;
      if (symmetry_ && group_.canonical_set(s) != s) return;
      units_.push_back(s);
      stabilizers_.push_back(symmetry_ ? group_.stabilizer(s) : std::vector<std::size_t>{});
    });
  }
}

void SearchSpace::visit_unit(std::size_t u, const std::function<bool(const Candidate&)>& f) const {
  const Geometry geo{group_, group_.dim()};
  const PointSet& R = units_[u];
  const std::size_t want = static_cast<std::size_t>(group_.dim()) + 1 - R.size();
  const bool equal = want == R.size();
  const std::uint32_t n = group_.point_count();
  std::vector<bool> inR(n, false);
  for (auto i : R) inR[i] = true;

  PointSet B;
  std::vector<Row> dirs;
  bool stop = false;
  auto accept = [&]() -> bool {
    if (!hull_info(geo, R, B).disjoint) return true;
    if (symmetry_) {
      const PairKey self{R, B};
      if (equal) {
        if (B < R) return true;
        for (std::size_t g = 1; g < group_.order(); ++g)
          if (key_less(normalized(group_.apply(g, R), group_.apply(g, B)), self)) return true;
      } else {
        for (auto g : stabilizers_[u])
          if (g != 0 && group_.apply(g, B) < B) return true;
      }
    }
    return f(Candidate{R, B});
  };
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (stop) return;
    if (B.size() == want) {
      if (!accept()) stop = true;
      return;
    }
    for (std::uint32_t i = from; i < n && !stop; ++i) {
      if (inR[i]) continue;
      if (!B.empty()) {
        dirs.push_back(geo.diff(i, B[0]));
        if (int_rank(dirs, geo.d) != static_cast<int>(dirs.size())) {
          dirs.pop_back();
          continue;
        }
      }
      B.push_back(i);
      self(self, i + 1);
      B.pop_back();
      if (!dirs.empty() && B.size() >= 1) dirs.pop_back();
    }
  };
  rec(rec, 0);
}

void SearchSpace::visit_all(const std::function<bool(const Candidate&)>& f) const {
  bool go = true;
  for (std::size_t u = 0; u < units_.size() && go; ++u)
    visit_unit(u, [&](const Candidate& c) { return go = f(c); });
}

PairKey canonicalize(const SimplexPair& pair, int d, std::int64_t k) {
  PointGroup g(d, k);
  return g.canonicalize(to_indices(g, pair.SP), to_indices(g, pair.SQ));
}

WitnessCheck check_witness(const SimplexPair& pair, int d, std::int64_t k, const Rational& epsSq) {
  WitnessCheck w;
  auto fail = [&](std::string msg) {
    w.ok = false;
    w.violation = std::move(msg);
    return w;
  };
  if (pair.SP.empty() || pair.SQ.empty()) return fail("empty witness");
  for (const auto* side : {&pair.SP, &pair.SQ})
    for (const auto& p : *side) {
      if (p.dim() != static_cast<std::size_t>(d)) return fail("witness point has the wrong dimension");
      for (auto c : p.coords)
        if (c < 0 || c > k) return fail("witness point outside [0,k]^d: " + p.to_string());
    }
  const auto rp = to_rational(pair.SP), rq = to_rational(pair.SQ);
  if (!affinely_independent(rp) || !affinely_independent(rq)) return fail("witness sides are not simplices");
  if (pair.SP.size() + pair.SQ.size() != static_cast<std::size_t>(d) + 1)
    return fail("witness dimensions do not sum to d-1");
  std::vector<RationalVector> dirs;
  for (std::size_t i = 1; i < rp.size(); ++i) dirs.push_back(rp[i] - rp[0]);
  for (std::size_t i = 1; i < rq.size(); ++i) dirs.push_back(rq[i] - rq[0]);
  const std::size_t base = rank(dirs);
  dirs.push_back(rq[0] - rp[0]);
  if (rank(dirs) == base) return fail("witness affine hulls intersect");
  auto r = min_distance_sq(rp, rq);
  w.distSq = r.distSq;
  w.certificate = r.certificate;
  if (auto c = verify_certificate(r.certificate, rp, rq); !c) return fail("certificate: " + c.violation);
  if (r.distSq != epsSq) return fail("witness distance " + r.distSq.to_string() + " differs from " + epsSq.to_string());
  return w;
}

namespace {

struct Best {
  Rational epsSq;
  PairKey key;
};

struct Shared {
  std::mutex m;
  std::optional<Rational> incumbent;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> expired{false};
  std::atomic<std::uint64_t> orbits{0}, pruned{0}, engine{0};
};

EpsilonResult search(int d, std::int64_t k, const EpsilonOptions& opt, std::optional<Rational> start) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  SearchSpace space(d, k, opt.symmetry, opt.enumerationCap);
  const PointGroup& grp = space.group();
  const Geometry geo{grp, d};
  Shared shared;
  shared.incumbent = start;
  std::optional<Clock::time_point> deadline;
  if (opt.timeBudgetSeconds)
    deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*opt.timeBudgetSeconds));

  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::optional<Best>> bests(jobs);

  auto worker = [&](unsigned id) {
    std::optional<Best>& best = bests[id];
    std::optional<Rational> inc;
    {
      std::lock_guard lock(shared.m);
      inc = shared.incumbent;
    }
    std::uint64_t tick = 0;
    auto beats = [&](const Rational& lb) { return inc && lb > *inc; };
    for (;;) {
      const std::size_t u = shared.next.fetch_add(1);
      if (u >= space.unit_count() || shared.expired) break;
      space.visit_unit(u, [&](const Candidate& c) {
        if ((++tick & 63) == 0) {
          if (deadline && Clock::now() > *deadline) {
            shared.expired = true;
            return false;
          }
          std::lock_guard lock(shared.m);
          inc = shared.incumbent;
        }
        shared.orbits.fetch_add(1, std::memory_order_relaxed);
        if (opt.prune && inc) {
          // Box gap.
          I128 box = 0;
          for (int i = 0; i < d; ++i) {
            I128 plo = k, phi = 0, qlo = k, qhi = 0;
            for (auto p : c.sp) {
              plo = std::min<I128>(plo, grp.coords(p)[static_cast<std::size_t>(i)]);
              phi = std::max<I128>(phi, grp.coords(p)[static_cast<std::size_t>(i)]);
            }
            for (auto q : c.sq) {
              qlo = std::min<I128>(qlo, grp.coords(q)[static_cast<std::size_t>(i)]);
              qhi = std::max<I128>(qhi, grp.coords(q)[static_cast<std::size_t>(i)]);
            }
            const I128 gap = std::max<I128>({0, qlo - phi, plo - qhi});
            box += gap * gap;
          }
          if (beats(Rational(to_integer(box)))) {
            shared.pruned.fetch_add(1, std::memory_order_relaxed);
            return true;
          }
          // Gap along the direction joining the centroids.
          Row cdir{};
          const I128 np = static_cast<I128>(c.sp.size()), nq = static_cast<I128>(c.sq.size());
          for (auto q : c.sq) {
            const Row r = geo.row(q);
            for (int i = 0; i < d; ++i) cdir[static_cast<std::size_t>(i)] += np * r[static_cast<std::size_t>(i)];
          }
          for (auto p : c.sp) {
            const Row r = geo.row(p);
            for (int i = 0; i < d; ++i) cdir[static_cast<std::size_t>(i)] -= nq * r[static_cast<std::size_t>(i)];
          }
          const I128 cc = idot(cdir, cdir, d);
          if (cc != 0) {
            I128 pmax = idot(cdir, geo.row(c.sp[0]), d), qmin = idot(cdir, geo.row(c.sq[0]), d);
            for (auto p : c.sp) pmax = std::max(pmax, idot(cdir, geo.row(p), d));
            for (auto q : c.sq) qmin = std::min(qmin, idot(cdir, geo.row(q), d));
            const I128 gap = qmin - pmax;
            if (gap > 0 && beats(ratio(gap * gap, cc))) {
              shared.pruned.fetch_add(1, std::memory_order_relaxed);
              return true;
            }
          }
          // Gap between the parallel hyperplanes containing the affine hulls.
          const HullInfo h = hull_info(geo, c.sp, c.sq);
          if (h.independent && beats(ratio(h.gap * h.gap, idot(h.normal, h.normal, d)))) {
            shared.pruned.fetch_add(1, std::memory_order_relaxed);
            return true;
          }
        }
        shared.engine.fetch_add(1, std::memory_order_relaxed);
        const auto rp = rational_points(grp, c.sp), rq = rational_points(grp, c.sq);
        Rational v = min_distance_sq(rp, rq).distSq;
        PairKey key = normalized(c.sp, c.sq);
        if (!best || v < best->epsSq || (v == best->epsSq && key_less(key, best->key))) {
          if (!inc || v <= *inc) best = Best{v, std::move(key)};
        }
        if (!inc || v < *inc) {
          std::lock_guard lock(shared.m);
          if (!shared.incumbent || v < *shared.incumbent) shared.incumbent = v;
          inc = shared.incumbent;
        }
        return true;
      });
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }

  std::optional<Best> best;
  for (auto& b : bests)
    if (b && (!best || b->epsSq < best->epsSq || (b->epsSq == best->epsSq && key_less(b->key, best->key))))
      best = std::move(b);

  EpsilonResult res;
  res.d = d;
  res.k = k;
  res.status = shared.expired ? SearchStatus::Incomplete : SearchStatus::Complete;
  res.stats.orbitsVisited = shared.orbits;
  res.stats.candidatesPruned = shared.pruned;
  res.stats.engineCalls = shared.engine;
  if (best) {
    res.epsSq = best->epsSq;
    res.witness = {to_points(grp, best->key.first), to_points(grp, best->key.second)};
    const auto rp = to_rational(res.witness.SP), rq = to_rational(res.witness.SQ);
    res.certificate = min_distance_sq(rp, rq).certificate;
  } else if (start) {
    res.epsSq = *start;
  }
  res.stats.wallSeconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

std::string format_points(const std::vector<LatticePoint>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < pts[i].coords.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(pts[i].coords[j]);
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep)
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t column) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cache: expected an integer, got '" + s + "'", column);
  }
}

std::vector<LatticePoint> parse_points(const std::string& s, std::size_t column) {
  std::vector<LatticePoint> out;
  if (s.empty()) return out;
  for (const auto& p : split(s, ';')) {
    LatticePoint lp;
    for (const auto& c : split(p, ' ')) lp.coords.push_back(parse_int(c, column));
    out.push_back(std::move(lp));
  }
  return out;
}

}  // namespace

std::string format_cache_record(const CacheRecord& r) {
  std::ostringstream os;
  os << r.d << ',' << r.k << ',' << (r.status == SearchStatus::Complete ? "COMPLETE" : "INCOMPLETE") << ','
     << r.epsSq.numerator().get_str() << ',' << r.epsSq.denominator().get_str() << ','
     << format_points(r.witness.SP) << ',' << format_points(r.witness.SQ);
  return os.str();
}

CacheRecord parse_cache_record(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != 7) throw ParseError("cache: expected 7 fields, got " + std::to_string(f.size()), 1);
  CacheRecord r;
  std::size_t col = 1;
  std::vector<std::size_t> cols;
  for (const auto& x : f) {
    cols.push_back(col);
    col += x.size() + 1;
  }
  r.d = static_cast<int>(parse_int(f[0], cols[0]));
  r.k = parse_int(f[1], cols[1]);
  if (f[2] == "COMPLETE")
    r.status = SearchStatus::Complete;
  else if (f[2] == "INCOMPLETE")
    r.status = SearchStatus::Incomplete;
  else
    throw ParseError("cache: unknown status '" + f[2] + "'", cols[2]);
  const Integer den(parse_int(f[4], cols[4]));
  if (den <= 0) throw ParseError("cache: denominator must be positive", cols[4]);
  r.epsSq = Rational(Integer(parse_int(f[3], cols[3])), den);
  r.witness.SP = parse_points(f[5], cols[5]);
  r.witness.SQ = parse_points(f[6], cols[6]);
  return r;
}

std::vector<CacheRecord> read_cache(const std::string& path) {
  std::vector<CacheRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(parse_cache_record(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ":" + std::to_string(e.column()) + ": " + e.what(),
                       e.column());
    }
  }
  return out;
}

void append_cache(const std::string& path, const CacheRecord& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  out << format_cache_record(r) << '\n';
}

std::optional<CacheRecord> find_complete(const std::vector<CacheRecord>& records, int d, std::int64_t k) {
  std::optional<CacheRecord> found;
  for (const auto& r : records)
    if (r.d == d && r.k == k && r.status == SearchStatus::Complete) found = r;
  return found;
}

EpsilonResult epsilon(int d, std::int64_t k, const EpsilonOptions& options) {
  if (d < 1 || k < 1) throw PreconditionError("epsilon needs d >= 1 and k >= 1");
  if (options.cachePath) {
    if (auto rec = find_complete(read_cache(*options.cachePath), d, k)) {
      const auto t0 = std::chrono::steady_clock::now();
      auto chk = check_witness(rec->witness, d, k, rec->epsSq);
      if (!chk.ok)
        throw CacheError("cache record for d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                         " fails verification: " + chk.violation);
      EpsilonResult res;
      res.d = d;
      res.k = k;
      res.epsSq = rec->epsSq;
      res.witness = rec->witness;
      res.certificate = chk.certificate;
      res.stats.fromCache = true;
      res.stats.wallSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return res;
    }
  }

  std::optional<Rational> start = options.initialIncumbent;
  if (!start && d >= 2) start = upper_bound_special_sq(d, k);
  EpsilonResult res = search(d, k, options, start);
  if (res.status == SearchStatus::Complete && !res.has_witness()) res = search(d, k, options, std::nullopt);

  if (options.cachePath)
    append_cache(*options.cachePath, {d, k, res.status, res.epsSq, res.witness});
  return res;
}

MonotonicityReport check_monotonicity(const std::vector<EpsilonResult>& results) {
  MonotonicityReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (results.size() < 2) fail("need at least two results");
  std::vector<const EpsilonResult*> sorted;
  for (const auto& r : results) {
    if (r.status != SearchStatus::Complete) fail("result for d=" + std::to_string(r.d) + " is incomplete");
    if (r.k != results.front().k) fail("results mix k values");
    sorted.push_back(&r);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->d < b->d; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& a = *sorted[i - 1];
    const auto& b = *sorted[i];
    if (a.d == b.d)
      fail("duplicate d=" + std::to_string(a.d));
    else if (!(b.epsSq < a.epsSq))
      fail("eps^2(" + std::to_string(b.d) + ") = " + b.epsSq.to_string() + " is not below eps^2(" +
           std::to_string(a.d) + ") = " + a.epsSq.to_string());
  }
  return rep;
}

FixedDimReport check_fixed_dim_bound(std::span<const LatticePoint> vp, std::span<const LatticePoint> vq,
                                     std::int64_t k, const std::map<std::pair<int, std::int64_t>, Rational>& known) {
  FixedDimReport rep;
  std::vector<LatticePoint> all(vp.begin(), vp.end());
  all.insert(all.end(), vq.begin(), vq.end());
  rep.unionDim = affine_rank(std::span<const LatticePoint>(all));
  rep.distSq = min_distance_sq(vp, vq).distSq;
  auto it = known.find({rep.unionDim, k});
  if (it == known.end()) return rep;
  rep.epsSq = it->second;
  rep.status = rep.distSq >= it->second ? BoundStatus::Pass : BoundStatus::Fail;
  return rep;
}

SegmentSweep segment_sweep(int d) {
  PointGroup grp(d, 1);
  const std::uint32_t n = grp.point_count();
  std::vector<PointSet> segments;
  for_each_subset(n, 2, [&](const PointSet& s) { segments.push_back(s); });
  SegmentSweep out;
  bool found = false;
  for (const auto& a : segments) {
    if (grp.canonical_set(a) != a) continue;
    const auto ra = rational_points(grp, a);
    for (const auto& b : segments) {
      const Rational v = min_distance_sq(ra, rational_points(grp, b)).distSq;
      ++out.pairsChecked;
      if (v.is_zero()) continue;
      if (!found || v < out.minDistSq) {
        found = true;
        out.minDistSq = v;
        out.argmin = {to_points(grp, a), to_points(grp, b)};
      }
    }
  }
  return out;
}

}  // namespace kissing
