#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kissing/rational.hpp"

namespace kissing::cli {

/// Malformed instance text. The message carries source:line:column.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * {"k": 3, "P": [[0, 1], ...], "Q": [["1/2", 0], ...]}
 *
 * Coordinates are JSON integers or strings holding "num/den". Floats are
 * rejected. k is optional; when present every coordinate must be an
 * integer in [0,k].
 */
struct Instance {
  std::optional<std::int64_t> k;
  std::vector<RationalVector> P;
  std::vector<RationalVector> Q;

  std::size_t dim() const { return P.empty() ? (Q.empty() ? 0 : Q.front().dim()) : P.front().dim(); }
};

struct InstanceRules {
  bool requireQ = true;
};

Instance parse_instance(const std::string& text, const std::string& source = "<input>",
                        InstanceRules rules = {});
Instance read_instance(const std::string& path, InstanceRules rules = {});

std::string format_instance(const Instance& inst);
void write_instance(const std::string& path, const Instance& inst);

}  // namespace kissing::cli
