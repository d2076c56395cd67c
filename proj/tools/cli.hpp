#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitMalformed = 2,
  kExitScope = 3,
  kExitIncomplete = 4,
};

/// Known values of epsilon(d,k)^2.
const std::map<std::pair<int, std::int64_t>, Rational>& table_one();

/// Runs one command. args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kissing::cli
