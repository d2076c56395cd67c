#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "instance.hpp"
#include "kissing/bounds.hpp"
#include "kissing/distance.hpp"
#include "support/fixtures.hpp"

using namespace kissing;
using namespace kissing::cli;
using kissing::testing::frac;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("kissing_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path_ / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("distance on the cube diagonal instance") {
  TempDir tmp;
  const auto f = tmp.file("cube_diag.json", R"({"k": 1, "P": [[0,0,0],[1,1,1]], "Q": [[1,0,0],[0,1,0]]})");
  Run r = run({"distance", "--input", f});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "distance_squared: 1/6"));
  CHECK(has_line(r.out, "certificate: verified"));
  CHECK(has_line(r.out, "tabulated_bound: PASS (>= 1/6)"));
  CHECK(r.out.find("inexact") == std::string::npos);

  r = run({"distance", "--input", f, "--approx"});
  CHECK(has_line(r.out, "distance_squared_approx: 0.1666666667 (inexact)"));
}

TEST_CASE("distance accepts rational coordinates") {
  TempDir tmp;
  const auto f = tmp.file("r.json", R"({"P": [["1/2", "-1/3"]], "Q": [[1, "2/3"], ["3/2", "2/3"]]})");
  Run r = run({"distance", "--input", f});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "distance_squared: 5/4"));
  CHECK(r.out.find("tabulated_bound") == std::string::npos);
}

TEST_CASE("epsilon for d=2, k=2") {
  Run r = run({"epsilon", "--d", "2", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "epsilon_squared: 1/5"));
  CHECK(has_line(r.out, "witness_P: (0,1)"));
  CHECK(has_line(r.out, "witness_Q: (0,0) (1,2)"));
  CHECK(has_line(r.out, "status: COMPLETE"));
}

TEST_CASE("epsilon options and error codes") {
  CHECK(run({"epsilon", "--d", "3", "--k", "1", "--jobs", "3", "--no-prune"}).out.find("epsilon_squared: 1/6") !=
        std::string::npos);
  CHECK(run({"epsilon", "--d", "2", "--k", "3", "--no-symmetry"}).out.find("epsilon_squared: 1/13") !=
        std::string::npos);
  CHECK(run({"epsilon", "--d", "7", "--k", "3"}).code == kExitScope);
  CHECK(run({"epsilon", "--d", "0", "--k", "3"}).code == kExitMalformed);
  CHECK(run({"epsilon", "--d", "2"}).code == kExitMalformed);
  Run r = run({"epsilon", "--d", "5", "--k", "1", "--time-budget", "0.01"});
  CHECK(r.code == kExitIncomplete);
  CHECK(has_line(r.out, "status: INCOMPLETE"));
  CHECK(r.out.find("epsilon_squared") == std::string::npos);
}

TEST_CASE("epsilon cache through flag and KP_CACHE") {
  TempDir tmp;
  const auto cache = tmp.file("cache.txt");
  Run r = run({"epsilon", "--d", "2", "--k", "3", "--cache", cache});
  CHECK(has_line(r.out, "source: search"));
  CHECK(slurp(cache).rfind("2,3,COMPLETE,1,13,", 0) == 0);

  ::setenv("KP_CACHE", cache.c_str(), 1);
  r = run({"epsilon", "--d", "2", "--k", "3"});
  ::unsetenv("KP_CACHE");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "source: cache"));
  CHECK(has_line(r.out, "epsilon_squared: 1/13"));

  const auto bad = tmp.file("bad.txt", "2,3,COMPLETE,1,14,0 1,0 0;2 3\n");
  r = run({"epsilon", "--d", "2", "--k", "3", "--cache", bad});
  CHECK(r.code == kExitMismatch);
  CHECK(r.err.find("fails verification") != std::string::npos);

  const auto garbled = tmp.file("garbled.txt", "# header\n2,3,DONE,1,13,0 1,0 0;2 3\n");
  r = run({"epsilon", "--d", "2", "--k", "3", "--cache", garbled});
  CHECK(r.code == kExitMalformed);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("verify-table up to d=3, k=2 and its cache idempotence") {
  TempDir tmp;
  const auto cache = tmp.file("cache.txt");
  Run r = run({"verify-table", "--max-d", "3", "--max-k", "2", "--cache", cache});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "matched: 4/4"));
  CHECK(has_line(r.out, "d=3 k=2 expected 1/50 computed 1/50 MATCH [search]"));
  CHECK(has_line(r.out, "decreasing_in_d k=1: PASS"));
  const std::string before = slurp(cache);

  r = run({"verify-table", "--max-d", "3", "--max-k", "2", "--cache", cache});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "matched: 4/4"));
  CHECK(r.out.find("[search]") == std::string::npos);
  CHECK(slurp(cache) == before);
}

TEST_CASE("verify-table reports a tampered but valid cache value as a mismatch") {
  TempDir tmp;
  // A genuine pair at distance^2 1/2 filed as the d=2, k=2 answer.
  const auto cache = tmp.file("cache.txt", "2,2,COMPLETE,1,2,0 0,0 1;1 0\n");
  Run r = run({"verify-table", "--max-d", "2", "--max-k", "2", "--cache", cache});
  CHECK(r.code == kExitMismatch);
  CHECK(has_line(r.out, "d=2 k=2 expected 1/5 computed 1/2 MISMATCH [cache]"));
}

TEST_CASE("malformed rationals give exit 2 with line and column") {
  TempDir tmp;
  const std::regex located(R"(:\d+:\d+: )");
  const auto zero = tmp.file("zero.json", "{\"P\": [[0,0]],\n \"Q\": [[\"1/0\", 1]]}\n");
  Run r = run({"distance", "--input", zero});
  CHECK(r.code == kExitMalformed);
  CHECK(r.err.find("zero.json:2:12:") != std::string::npos);

  const auto letters = tmp.file("letters.json", "{\"P\": [[0,0]],\n \"Q\": [[\"a/b\", 1]]}\n");
  r = run({"distance", "--input", letters});
  CHECK(r.code == kExitMalformed);
  CHECK(r.err.find("letters.json:2:10:") != std::string::npos);

  for (const char* bad : {"1/0", "a/b", "1/", "/2", "1.5", " 1", "1/-2"}) {
    const auto f = tmp.file("v.json", std::string("{\"P\": [[\"") + bad + "\"]], \"Q\": [[0]]}");
    r = run({"facial", "--input", f});
    CHECK_MESSAGE(r.code == kExitMalformed, bad);
    CHECK_MESSAGE(std::regex_search(r.err, located), bad);
  }
}

TEST_CASE("instance parse errors") {
  auto message = [](const std::string& text) {
    try {
      parse_instance(text, "in");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"P": [[0.5]], "Q": [[0]]})") == "in:1:9: floating-point coordinate 0.5 not allowed; write it as a \"num/den\" string");
  CHECK(message(R"({"P": [[0]], "Q": [[0, 1]]})") == "in:1:20: point has dimension 2, expected 1");
  CHECK(message(R"({"P": [[0]], "R": [[0]]})") == "in:1:14: unknown key \"R\" (expected k, P, Q)");
  CHECK(message(R"({"P": [[0]], "P": [[0]]})") == "in:1:14: duplicate key \"P\"");
  CHECK(message(R"({"P": [[0]]})") == "in:1:1: missing key \"Q\"");
  CHECK(message(R"({"k": 2, "P": [[0]], "Q": [[3]]})") == "in:1:29: coordinate 3 is not an integer in [0,2]");
  CHECK(message(R"({"k": 2, "P": [["1/2"]], "Q": [[1]]})") == "in:1:17: coordinate 1/2 is not an integer in [0,2]");
  CHECK(message(R"({"k": 0, "P": [[0]], "Q": [[0]]})") == "in:1:7: k must be a positive integer");
  CHECK(message(R"({"P": [[]], "Q": [[0]]})") == "in:1:8: points need at least one coordinate");
  CHECK(message(R"({"P": [[true]], "Q": [[0]]})") ==
        "in:1:9: coordinate must be an integer or \"num/den\" string, got a boolean");
  CHECK(message(R"({"P": [[99999999999999999999]], "Q": [[0]]})") ==
        "in:1:9: integer out of range; write it as a \"num/den\" string");
  CHECK(message("[1, 2]") == "in:1:1: instance must be a JSON object");
  CHECK(message("{\"P\": [[0]],\n  \"Q\": [[0]]") .find("in:2:") == 0);
}

TEST_CASE("instance text round trip") {
  Instance a;
  a.k = std::nullopt;
  a.P = {RationalVector{frac(1, 3), Rational(Integer("123456789012345678901234567890"))}};
  a.Q = {RationalVector{0, frac(-7, 2)}, RationalVector{5, 6}};
  const Instance b = parse_instance(format_instance(a));
  CHECK(b.P == a.P);
  CHECK(b.Q == a.Q);
  CHECK(!b.k);
  a.k = 6;
  a.P = {RationalVector{1, 2}};
  a.Q = {RationalVector{0, 6}};
  CHECK(parse_instance(format_instance(a)).k == 6);
}

TEST_CASE("construct emits instances that respect the construction bound") {
  TempDir tmp;
  for (int sigma = 1; sigma <= 2; ++sigma)
    for (int delta = 4; delta <= 5; ++delta)
      for (std::int64_t k = 1; k <= 2; ++k) {
        const auto f = tmp.file("c.json");
        Run r = run({"construct", "--sigma", std::to_string(sigma), "--delta", std::to_string(delta), "--k",
                     std::to_string(k), "--emit", f});
        REQUIRE(r.code == 0);
        CHECK(has_line(r.out, "verification: ok"));
        const Instance inst = read_instance(f);
        CHECK(inst.k == k);
        CHECK(inst.dim() == static_cast<std::size_t>(delta * (sigma + 1)));
        const Rational dist = min_distance_sq(inst.P, inst.Q).distSq;
        CHECK(dist.sign() > 0);
        CHECK(dist <= upper_bound_construction_sq(sigma, delta, k).sq);
        Run d = run({"distance", "--input", f});
        CHECK(d.code == 0);
        CHECK(has_line(d.out, "distance_squared: " + dist.to_string()));
      }
  CHECK(run({"construct", "--sigma", "1", "--delta", "2", "--k", "1", "--emit", tmp.file("x.json")}).code ==
        kExitMalformed);
}

TEST_CASE("bounds output") {
  Run r = run({"bounds", "--d", "3", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "lower_sq_hadamard: " + lower_bound_lattice_sq(3, 2).hadamard.to_string()));
  CHECK(has_line(r.out, "upper_sq_near_corner: 1/16"));
  CHECK(has_line(r.out, "tabulated_epsilon_squared: 1/50"));
  r = run({"bounds", "--d", "8", "--k", "1", "--sigma", "1", "--delta", "4"});
  CHECK(has_line(r.out, "upper_sq_construction: 4/9 (sigma=1, delta=4)"));
  CHECK(has_line(r.out, "upper_sq_diagonal: 1/56"));
  CHECK(run({"bounds", "--d", "8", "--k", "1", "--sigma", "1"}).code == kExitMalformed);
  CHECK(run({"bounds", "--d", "9", "--k", "1", "--sigma", "1", "--delta", "4"}).code == kExitMalformed);
  r = run({"bounds", "--d", "4", "--k", "1", "--alpha", "0.5"});
  CHECK(r.out.find("(approximate)") != std::string::npos);
}

TEST_CASE("facial distances of the unit square") {
  TempDir tmp;
  const auto f = tmp.file("sq.json", R"({"P": [[0,0],[1,0],[0,1],[1,1],["1/2","1/2"]]})");
  Run r = run({"facial", "--input", f});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "vertices: (0,0) (1,0) (0,1) (1,1)"));
  CHECK(has_line(r.out, "facial_distance_squared: 1/2"));
  CHECK(has_line(r.out, "vertex_facet_distance_squared: 1"));
  const auto point = tmp.file("pt.json", R"({"P": [[0,0],[0,0]]})");
  CHECK(run({"facial", "--input", point}).code == kExitMalformed);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitMalformed);
  CHECK(run({"frobnicate"}).code == kExitMalformed);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"distance", "--input", "/nonexistent/file.json"}).code == kExitMalformed);
}
