#ifndef CITENET_TOOLS_RUN_HPP
#define CITENET_TOOLS_RUN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace citenet::cli {

inline constexpr const char* kToolName = "citenet";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 2015;

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kResourceError = 3,
};

struct RunConfig {
  std::string subcommand;
  std::string nodes;
  std::string edges;
  std::string out = ".";
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  bool keep_equal_time = false;
  bool include_endpoints = false;
  std::uint64_t min_interval_size = 32;
  std::uint64_t num_pairs = 200;
  std::string method = "myrheim_meyer";
  std::uint64_t edge_budget = 1'000'000'000;
  std::uint64_t top_k = 20;
  std::uint64_t chunk_size = 4096;
  std::string source;
  std::string target;
  std::string geometry = "minkowski_diamond";
  int dim = 2;
  std::uint64_t n = 1000;
  std::string figure;
  std::string report;
};

/// Parses `args` (without the program name) and executes the subcommand.
/// Diagnostics go to `err`, informational summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Executes an already parsed configuration; throws citenet errors.
void execute(const RunConfig& config, std::ostream& out);

}  // namespace citenet::cli

#endif  // CITENET_TOOLS_RUN_HPP
