#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "whlattice/cli/config.hpp"
#include "whlattice/cli/report.hpp"
#include "whlattice/convergence.hpp"
#include "whlattice/verify.hpp"

namespace whl::cli {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"symbol",  "factorize", "lagrange", "interpolate",
                                                 "converge", "decay",    "verify",   "cache"};
  return names;
}

// runs one subcommand; files go to cfg.out_dir, a one-line summary to `log`.
// `action` is the cache subcommand's verb (list, clear, key).
int dispatch(const std::string& cmd, const RunConfig& cfg, std::ostream& log, const std::string& action = "");

// all checks the verify subcommand runs, without touching the file system
Report verify_report(const RunConfig& cfg);

// CSV with header k_1..k_d,y
DataWindow read_data_csv(const std::string& path, int dim);

}  // namespace whl::cli
