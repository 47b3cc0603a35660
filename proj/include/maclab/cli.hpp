#pragma once

#include "maclab/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace maclab {

struct RunConfig {
  std::string command;
  std::string type = "A1";
  int n = 2;
  int m = 1;
  int N = 12;
  int nq = 4;
  int nt = 4;
  int qden = 1;
  int weight_bound = -4;
  int p_bound = 3;
  unsigned threads = 0; // 0: available parallelism
  std::string format = "text";
  std::uint64_t seed = 1;
  int dump_order = -1;
  std::string out;
  std::vector<std::string> args; // positional operands of dump-matrix / dump-series
};

/// Runs one command.  Library errors propagate.
Report dispatch(const RunConfig& config);

/// Full command-line entry point; returns the process exit code
/// (0 PASS, 1 FAIL, 2 capacity or usage error).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace maclab
