#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "secluded/instance.hpp"

namespace ssp {

// Line-oriented instance files, vertices 1-based on disk:
//   # comment                      (anywhere; blank lines are fine)
//   p ssp <n> <m> <k> <l>          (first content line, exactly once)
//   s <v>                          (exactly once)
//   t <v>                          (exactly once)
//   e <u> <v>                      (exactly m lines; no loops, no repeats)
//   w <v> <kappa> <lambda> <eta>   (optional, at most once per vertex)
// Any w line makes the instance vertex-weighted; unmentioned vertices keep
// kappa=1, lambda=1, eta=0.  Weights beyond the budgets carry no extra
// information, so ingest clamps kappa at k+1 and lambda/eta at l+1.
struct ParsedInstance {
  VwSspInstance inst;
  bool weighted = false;  // true iff the file carried a w line
};

// Throws std::invalid_argument with a line-numbered message on malformed
// input; instance invariant violations surface from validate() unchanged.
ParsedInstance parse_instance(std::istream& in);
ParsedInstance parse_instance(const std::string& text);

void write_instance(std::ostream& out, const SspInstance& inst);
// Writes w lines only for vertices off the default weights, so lifted
// unweighted instances round-trip through the unweighted syntax.
void write_instance(std::ostream& out, const VwSspInstance& inst);

// One full run flattened for reporting.  Vertices held 0-based; the JSON
// rendering converts to the 1-based file convention.
struct RunResult {
  bool answer = false;
  std::optional<int64_t> min_cost;
  std::optional<PathWitness> witness;
  int n = 0;
  int m = 0;
  std::optional<int> width;
  std::optional<uint64_t> max_table;
  std::vector<std::pair<std::string, int64_t>> kernel_sizes;
  std::vector<std::pair<std::string, double>> timings_ms;
  uint64_t seed = 0;
  std::string pipeline;
};

// Stable report document ("schema": 1).  Unset optionals render as null,
// stage lists as arrays in pipeline order.
nlohmann::ordered_json to_json(const RunResult& result);

}  // namespace ssp
