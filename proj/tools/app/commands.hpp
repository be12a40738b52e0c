#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace solitwave::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

struct Options {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> profile;  // propagate only
  int workers = 1;                               // sweep only
  bool verbose = false;
};

/// --out if given, else $SOLITWAVE_OUTPUT_ROOT (or ./runs) / <config stem>-<command>.
std::filesystem::path output_dir(const Options& opts, const std::string& command);

int cmd_solve_homogeneous(const Options& opts);
int cmd_solve_nonhomogeneous(const Options& opts);
int cmd_propagate(const Options& opts);
int cmd_sweep(const Options& opts);

/// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv);

}  // namespace solitwave::app
