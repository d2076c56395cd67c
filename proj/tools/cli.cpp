#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "instance.hpp"
#include "kissing/bounds.hpp"
#include "kissing/constructions.hpp"
#include "kissing/distance.hpp"
#include "kissing/epsilon.hpp"
#include "kissing/geometry.hpp"
#include "kissing/minnorm.hpp"

namespace kissing::cli {

const std::map<std::pair<int, std::int64_t>, Rational>& table_one() {
  static const std::map<std::pair<int, std::int64_t>, Rational> table = [] {
    std::map<std::pair<int, std::int64_t>, Rational> t;
    const std::pair<std::pair<int, std::int64_t>, long> rows[] = {
        {{2, 1}, 2},  {{2, 2}, 5},  {{2, 3}, 13},  {{2, 4}, 25}, {{2, 5}, 41}, {{2, 6}, 61},
        {{3, 1}, 6},  {{3, 2}, 50}, {{3, 3}, 299}, {{4, 1}, 18}, {{5, 1}, 58},
    };
    for (const auto& [dk, den] : rows) t.emplace(dk, Rational(Integer(1), Integer(den)));
    return t;
  }();
  return table;
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string join(const std::vector<Rational>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string join(const std::vector<LatticePoint>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].to_string();
  return os.str();
}

std::string join(const std::vector<RationalVector>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].to_string();
  return os.str();
}

std::string approx(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x << " (inexact)";
  return os.str();
}

std::optional<std::string> cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("KP_CACHE"); env && *env) return std::string(env);
  return std::nullopt;
}

std::vector<LatticePoint> to_lattice(const std::vector<RationalVector>& pts) {
  std::vector<LatticePoint> out;
  for (const auto& p : pts) {
    LatticePoint lp;
    for (std::size_t i = 0; i < p.dim(); ++i) lp.coords.push_back(p[i].numerator().get_si());
    out.push_back(std::move(lp));
  }
  return out;
}

// Distinct points that are not in the hull of the others, in input order.
std::vector<RationalVector> extreme_points(const std::vector<RationalVector>& pts) {
  std::vector<RationalVector> uniq;
  for (const auto& p : pts)
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  std::vector<bool> keep(uniq.size(), true);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i && keep[j]) others.push_back(uniq[j]);
    if (!others.empty() && in_convex_hull(uniq[i], others)) keep[i] = false;
  }
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < uniq.size(); ++i)
    if (keep[i]) out.push_back(uniq[i]);
  return out;
}

int cmd_distance(const std::string& input, bool want_approx, std::ostream& out) {
  const Instance inst = read_instance(input);
  if (inst.Q.front().dim() != inst.P.front().dim()) throw InputError(input + ": P and Q differ in dimension");
  const DistanceResult r = min_distance_sq(inst.P, inst.Q);
  const auto& c = r.certificate;
  out << "dimension: " << inst.dim() << '\n';
  out << "distance_squared: " << r.distSq << '\n';
  if (want_approx) {
    out << "distance_squared_approx: " << approx(r.distSq.to_double()) << '\n';
    out << "distance_approx: " << approx(std::sqrt(r.distSq.to_double())) << '\n';
  }
  if (r.distSq.is_zero()) out << "intersecting: yes\n";
  out << "p: " << c.p.to_string() << '\n';
  out << "q: " << c.q.to_string() << '\n';
  out << "active_P: " << join(c.activeP) << '\n';
  out << "lambda_P: " << join(c.lambdaP) << '\n';
  out << "active_Q: " << join(c.activeQ) << '\n';
  out << "lambda_Q: " << join(c.lambdaQ) << '\n';
  const CertificateCheck chk = verify_certificate(c, inst.P, inst.Q);
  if (!chk) {
    out << "certificate: FAILED " << chk.violation << '\n';
    return kExitMismatch;
  }
  out << "certificate: verified\n";

  if (inst.k && !r.distSq.is_zero()) {
    const FixedDimReport fd = check_fixed_dim_bound(to_lattice(inst.P), to_lattice(inst.Q), *inst.k, table_one());
    out << "union_dimension: " << fd.unionDim << '\n';
    switch (fd.status) {
      case BoundStatus::Pass:
        out << "tabulated_bound: PASS (>= " << *fd.epsSq << ")\n";
        break;
      case BoundStatus::Fail:
        out << "tabulated_bound: FAIL (< " << *fd.epsSq << ")\n";
        return kExitMismatch;
      case BoundStatus::Unchecked:
        out << "tabulated_bound: unchecked\n";
        break;
    }
  }
  return kExitOk;
}

struct EpsilonArgs {
  int d = 0;
  std::int64_t k = 0;
  unsigned jobs = 1;
  std::string cache;
  std::optional<double> budget;
  bool noPrune = false;
  bool noSymmetry = false;
};

int cmd_epsilon(const EpsilonArgs& a, std::ostream& out) {
  EpsilonOptions opts;
  opts.jobs = a.jobs;
  opts.cachePath = cache_path(a.cache);
  opts.timeBudgetSeconds = a.budget;
  opts.prune = !a.noPrune;
  opts.symmetry = !a.noSymmetry;
  const EpsilonResult r = epsilon(a.d, a.k, opts);
  const bool complete = r.status == SearchStatus::Complete;
  out << "d: " << r.d << '\n';
  out << "k: " << r.k << '\n';
  out << "status: " << (complete ? "COMPLETE" : "INCOMPLETE") << '\n';
  if (complete)
    out << "epsilon_squared: " << r.epsSq << '\n';
  else if (r.has_witness())
    out << "upper_bound_squared: " << r.epsSq << '\n';
  if (r.has_witness()) {
    out << "witness_P: " << join(r.witness.SP) << '\n';
    out << "witness_Q: " << join(r.witness.SQ) << '\n';
    out << "closest_p: " << r.certificate.p.to_string() << '\n';
    out << "closest_q: " << r.certificate.q.to_string() << '\n';
  }
  out << "source: " << (r.stats.fromCache ? "cache" : "search") << '\n';
  out << "orbits_visited: " << r.stats.orbitsVisited << '\n';
  out << "candidates_pruned: " << r.stats.candidatesPruned << '\n';
  out << "engine_calls: " << r.stats.engineCalls << '\n';
  out << "wall_seconds: " << std::fixed << std::setprecision(3) << r.stats.wallSeconds << '\n';
  return complete ? kExitOk : kExitIncomplete;
}

int cmd_bounds(int d, std::int64_t k, std::optional<int> sigma, std::optional<int> delta,
               std::optional<double> alpha, std::ostream& out) {
  if (sigma.has_value() != delta.has_value())
    throw PreconditionError("--sigma and --delta must be given together");
  std::optional<std::pair<int, int>> sd;
  if (sigma) sd = std::make_pair(*sigma, *delta);
  const BoundReport r = bound_report(d, k, sd);
  out << "d: " << r.d << '\n';
  out << "k: " << r.k << '\n';
  out << "lower_sq_hadamard: " << r.lowerSqHadamard << '\n';
  out << "lower_sq_simple: " << r.lowerSqSimple << '\n';
  if (r.upperSqDiagonal) out << "upper_sq_diagonal: " << *r.upperSqDiagonal << '\n';
  if (r.upperSqNearCorner) out << "upper_sq_near_corner: " << *r.upperSqNearCorner << '\n';
  if (r.upperSqConstruction)
    out << "upper_sq_construction: " << *r.upperSqConstruction << " (sigma=" << r.sigmaDelta->first
        << ", delta=" << r.sigmaDelta->second << ")\n";
  if (auto it = table_one().find({d, k}); it != table_one().end())
    out << "tabulated_epsilon_squared: " << it->second << '\n';
  if (alpha) out << "asymptotic_alpha_" << *alpha << ": " << asymptotic_bound_display(d, k, *alpha) << '\n';
  return kExitOk;
}

int cmd_construct(int sigma, int delta, std::int64_t k, const std::string& emit, std::ostream& out) {
  const ConstructionOutput c = build_construction({sigma, delta, k});
  const ConstructionCheck chk = verify_construction(c);
  out << "sigma: " << sigma << '\n';
  out << "delta: " << delta << '\n';
  out << "k: " << k << '\n';
  out << "d: " << c.d << '\n';
  out << "theta: " << c.theta << '\n';
  out << "p_small: " << c.pSmall.to_string() << '\n';
  out << "q_small: " << c.qSmall.to_string() << '\n';
  out << "p_lift: " << c.pLift.to_string() << '\n';
  out << "q_lift: " << c.qLift.to_string() << '\n';
  out << "lift_distance_squared: " << chk.liftDistSq << '\n';
  out << "bound_squared: " << chk.boundSq << '\n';
  out << "convexity_guaranteed: " << (c.convexityGuaranteed ? "yes" : "no") << '\n';

  Instance inst;
  inst.k = k;
  auto flatten = [](const std::vector<std::vector<LatticePoint>>& cols) {
    std::set<LatticePoint> seen;
    std::vector<RationalVector> pts;
    for (const auto& col : cols)
      for (const auto& p : col)
        if (seen.insert(p).second) pts.push_back(p.to_rational());
    return pts;
  };
  inst.P = flatten(c.generatorsP);
  inst.Q = flatten(c.generatorsQ);
  write_instance(emit, inst);
  out << "emitted: " << emit << " (" << inst.P.size() << " P points, " << inst.Q.size() << " Q points)\n";

  if (!chk) {
    for (const auto& f : chk.failures) out << "verification: FAILED " << f << '\n';
    return kExitMismatch;
  }
  out << "verification: ok\n";
  return kExitOk;
}

int cmd_facial(const std::string& input, std::ostream& out) {
  const Instance inst = read_instance(input, {.requireQ = false});
  auto report = [&](const char* name, const std::vector<RationalVector>& pts) {
    const auto verts = extreme_points(pts);
    if (verts.size() < 2) throw PreconditionError(std::string(name) + " needs at least two distinct vertices");
    const FaceDistance fd = facial_distance(verts);
    const FaceDistance vf = vertex_facet_distance(verts);
    auto face_points = [&](const Face& f) {
      std::vector<RationalVector> v;
      for (auto i : f.vertices) v.push_back(verts[i]);
      return join(v);
    };
    out << "polytope: " << name << '\n';
    out << "vertices: " << join(verts) << '\n';
    out << "facial_distance_squared: " << fd.distSq << '\n';
    out << "facial_face: " << face_points(fd.face) << '\n';
    out << "vertex_facet_distance_squared: " << vf.distSq << '\n';
    out << "vertex_facet_facet: " << face_points(vf.face) << '\n';
  };
  report("P", inst.P);
  if (!inst.Q.empty()) report("Q", inst.Q);
  return kExitOk;
}

int cmd_verify_table(int max_d, std::int64_t max_k, const std::string& cache, std::ostream& out) {
  EpsilonOptions opts;
  opts.cachePath = cache_path(cache);
  int matched = 0, total = 0;
  bool ok = true;
  std::map<std::int64_t, std::vector<EpsilonResult>> by_k;
  std::map<int, std::vector<EpsilonResult>> by_d;
  for (const auto& [dk, expected] : table_one()) {
    const auto [d, k] = dk;
    if (d > max_d || k > max_k) continue;
    ++total;
    const EpsilonResult r = epsilon(d, k, opts);
    const bool match = r.status == SearchStatus::Complete && r.epsSq == expected;
    matched += match;
    ok = ok && match;
    out << "d=" << d << " k=" << k << " expected " << expected << " computed " << r.epsSq << ' '
        << (match ? "MATCH" : "MISMATCH") << " [" << (r.stats.fromCache ? "cache" : "search") << "]\n";
    by_k[k].push_back(r);
    by_d[d].push_back(r);
  }
  out << "matched: " << matched << "/" << total << '\n';

  for (const auto& [k, rs] : by_k) {
    if (rs.size() < 2) continue;
    const MonotonicityReport m = check_monotonicity(rs);
    out << "decreasing_in_d k=" << k << ": " << (m.ok ? "PASS" : "FAIL") << '\n';
    for (const auto& v : m.violations) out << "  " << v << '\n';
    ok = ok && m.ok;
  }
  for (const auto& [d, rs] : by_d) {
    if (rs.size() < 2) continue;
    bool decreasing = true;
    for (std::size_t i = 1; i < rs.size(); ++i) decreasing = decreasing && rs[i].epsSq < rs[i - 1].epsSq;
    out << "trend_in_k d=" << d << ": " << (decreasing ? "decreasing" : "not decreasing")
        << " (observed, not asserted)\n";
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact distances between lattice polytopes", "kissing"};
  app.require_subcommand(1);

  std::string input;
  bool want_approx = false;
  auto* distance = app.add_subcommand("distance", "Exact squared distance between conv(P) and conv(Q)");
  distance->add_option("--input", input, "Instance file")->required();
  distance->add_flag("--approx", want_approx, "Also print decimal approximations");

  EpsilonArgs ea;
  double budget = 0;
  auto* eps = app.add_subcommand("epsilon", "Smallest distance between disjoint lattice (d,k)-polytopes");
  eps->add_option("--d", ea.d, "Dimension")->required()->check(CLI::PositiveNumber);
  eps->add_option("--k", ea.k, "Box side")->required()->check(CLI::PositiveNumber);
  eps->add_option("--jobs", ea.jobs, "Worker threads")->check(CLI::PositiveNumber);
  eps->add_option("--cache", ea.cache, "Result cache (default $KP_CACHE)");
  auto* budget_opt = eps->add_option("--time-budget", budget, "Seconds before giving up")->check(CLI::PositiveNumber);
  eps->add_flag("--no-prune", ea.noPrune, "Disable lower-bound pruning");
  eps->add_flag("--no-symmetry", ea.noSymmetry, "Disable symmetry reduction");

  int bd = 0;
  std::int64_t bk = 0;
  std::optional<int> bsigma, bdelta;
  std::optional<double> balpha;
  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on epsilon(d,k)");
  bounds->add_option("--d", bd, "Dimension")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--k", bk, "Box side")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--sigma", bsigma, "Construction parameter sigma");
  bounds->add_option("--delta", bdelta, "Construction parameter delta");
  bounds->add_option("--alpha", balpha, "Show the asymptotic bound for this exponent");

  int csigma = 0, cdelta = 0;
  std::int64_t ck = 0;
  std::string emit;
  auto* construct = app.add_subcommand("construct", "Build the lifted near-kissing pair and emit an instance");
  construct->add_option("--sigma", csigma, "sigma >= 1")->required();
  construct->add_option("--delta", cdelta, "delta >= 3")->required();
  construct->add_option("--k", ck, "Box side")->required()->check(CLI::PositiveNumber);
  construct->add_option("--emit", emit, "Instance file to write")->required();

  std::string finput;
  auto* facial = app.add_subcommand("facial", "Facial and vertex-facet distances of P (and Q)");
  facial->add_option("--input", finput, "Instance file")->required();

  int max_d = 5;
  std::int64_t max_k = 6;
  std::string vcache;
  auto* verify = app.add_subcommand("verify-table", "Recompute the tabulated epsilon values");
  verify->add_option("--max-d", max_d, "Largest d to check")->check(CLI::PositiveNumber);
  verify->add_option("--max-k", max_k, "Largest k to check")->check(CLI::PositiveNumber);
  verify->add_option("--cache", vcache, "Result cache (default $KP_CACHE)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (*distance) return cmd_distance(input, want_approx, out);
    if (*eps) {
      if (*budget_opt) ea.budget = budget;
      return cmd_epsilon(ea, out);
    }
    if (*bounds) return cmd_bounds(bd, bk, bsigma, bdelta, balpha, out);
    if (*construct) return cmd_construct(csigma, cdelta, ck, emit, out);
    if (*facial) return cmd_facial(finput, out);
    if (*verify) return cmd_verify_table(max_d, max_k, vcache, out);
  } catch (const CacheError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const ScopeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitScope;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitMalformed;
}

}  // namespace kissing::cli
