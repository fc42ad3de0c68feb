#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jetlie {

struct RunConfig {
  std::string alpha = "sym";  // "sym" or a nonzero rational
  std::string beta = "sym";
  int max_order = 12;
  std::string interp = "third";  // third | cubed | both
  std::string format = "text";   // text | json
  std::uint64_t seed = 1;
  std::size_t basis_limit = 4000;
};

struct CliOutput {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs `jetlie` with the given arguments (program name excluded).
/// Exit codes: 0 success or a positive verdict, 1 a negative verdict,
/// 2 input errors.
CliOutput run_cli(const std::vector<std::string>& args);

}  // namespace jetlie
