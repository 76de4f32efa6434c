#ifndef STEKLOV_RUN_HPP
#define STEKLOV_RUN_HPP

// Run orchestration shared by the command-line tool and the tests: a flat
// configuration struct, a key=value config-file codec that round-trips, and
// the command implementations.
//
// Exit codes: 0 success, 2 configuration or profile errors, 3 solver
// failures, 4 at least one Violated verdict from `verify`.

#include <string>
#include <vector>

#include "steklov/bounds.hpp"

namespace steklov {

enum class Command { Compute, Verify, Sweep, Table };
enum class WarpFamily { Ball, Cylinder, Sin, Sharpness, File };
enum class OutFormat { Csv, Json, Both };

struct RunConfig {
  Command command = Command::Compute;
  WarpFamily warp = WarpFamily::Ball;
  std::string topology = "auto";  ///< file warps: auto | connected | two-boundary
  int n = 3;
  int p = 0;
  double R = 1.0;
  double L = 1.0;
  int m_max = 8;              ///< doubles as k_max for verify
  double eps = 0.1;           ///< sharpness family parameter
  double C = 0;               ///< gap-bound cap; 0 means max h over the grid
  std::string profile;        ///< profile file path (warp = file)
  std::string theorem = "all";
  double tol = 1e-10;
  double r0_factor = 1e-4;
  int fem_n = 256;
  int output_points = 2049;
  std::string sweep_param;    ///< eps | L | R | p
  std::vector<double> sweep_values;
  std::string out;            ///< artifact directory; empty = no files
  OutFormat format = OutFormat::Both;
  bool dump_radial = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parses flat key=value text with optional [section] headers (sections are
/// cosmetic; keys are unique across the file). Throws DomainError on
/// unknown keys or unparseable values.
RunConfig parse_config_text(const std::string& text);

/// Canonical serialization; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Full command line: subcommand, optional --config file, flags (flags win
/// over file values). Throws DomainError on bad input.
RunConfig parse_command_line(const std::vector<std::string>& args);

/// Builds the WarpSpec a config describes (reads profile files for
/// warp = file).
WarpSpec warp_from_config(const RunConfig& config);

/// Runs the bound checkers a config's theorem selector names.
std::vector<BoundReport> verify_from_config(const RunConfig& config);

int cmd_compute(const RunConfig& config);  // also implements Table
int cmd_verify(const RunConfig& config);
int cmd_sweep(const RunConfig& config);

/// argv-level entry point used by the binary: parses, dispatches, maps
/// errors to exit codes.
int run_main(int argc, const char* const* argv);

}  // namespace steklov

#endif
