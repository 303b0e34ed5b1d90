#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kee/report.hpp"

namespace kee::cli {

enum class Command { solve, scan, verify, fiber, classes, limit };

struct RunConfig {
  Command command = Command::solve;
  int n = 1;
  std::vector<double> beta1;  ///< one value, or a sweep list
  int grid = 5;               ///< verify: grid × grid × 3 chart points
  double fd_step = 1e-3;
  double quad_tol = 1e-10;
  double s_hull = 40.0;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  int emit_profile = 0;  ///< solve: number of (τ, φ, φ′) samples to append
  // scan
  double beta1_min = 1e-4;
  std::optional<double> beta1_max;
  int count = 20;
  bool linear = false;
  unsigned threads = 1;
};

/// Bad flags or values; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; carries the help text. Exit status 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] const char* command_name(Command c);

/// Arguments exclude the program name.
[[nodiscard]] RunConfig parse(const std::vector<std::string>& args);

/// KEE_THREADS, if set to a positive integer; otherwise 1.
[[nodiscard]] unsigned threads_from_env();

struct RunResult {
  Report report;
  int exit_status = 0;  ///< 0 all checks pass, 1 a numeric threshold failed
};

[[nodiscard]] RunResult run(const RunConfig& config);

/// Full driver: parse, run, emit. Returns the process exit status
/// (0 ok, 1 threshold failure or module error, 2 usage, 3 I/O).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kee::cli
