#pragma once
// Command-line front end: subcommand parsing and dispatch, sweep config files
// (flat key = value lines with [window] blocks), deterministic seeding, and
// output routing. Exit codes: 0 ok, 2 constraint/usage violation, 1 runtime error.
#include <cstdint>
#include <string>
#include <vector>

#include "frobangle/equidist.hpp"

namespace frobangle {

// "a,b" with 0 <= a < b <= pi
AngleInterval parse_interval(const std::string& text);
// catalog id "d<N>" or custom "a,b,d"
CMCurve parse_curve(const std::string& text);

struct SweepConfig {
  std::string curve_id = "d1";
  double envelope_c = 1.0;
  std::uint64_t seed = 0;
  std::vector<SweepEntry> entries;
};

SweepConfig parse_sweep_config(const std::string& text);

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

// full CLI with captured streams (test entry point)
CliResult run_cli_capture(const std::vector<std::string>& args);

// binary entry point; writes to stdout/stderr, returns the exit code
int run_cli(int argc, char** argv);

}  // namespace frobangle
