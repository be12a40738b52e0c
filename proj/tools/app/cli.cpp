#include <CLI11.hpp>

#include "commands.hpp"
#include "solitwave/version.hpp"

namespace solitwave::app {

int run(int argc, char** argv) {
  CLI::App app{"Solitary waves of fifth-order Boussinesq systems"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opts;
  std::string out;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "YAML run configuration")->required();
    sub->add_option("--out", out, "Output directory (default: $SOLITWAVE_OUTPUT_ROOT/<config>-<command>)");
    sub->add_flag("--verbose", opts.verbose, "Progress on stderr");
  };

  CLI::App* hom = app.add_subcommand("solve-homogeneous", "Stabilized fixed-point solve for a power nonlinearity");
  common(hom);
  CLI::App* non = app.add_subcommand("solve-nonhomogeneous", "Cosine collocation and Newton solve");
  common(non);
  CLI::App* prop = app.add_subcommand("propagate", "Time-evolve a computed profile and check translation");
  common(prop);
  std::string profile;
  prop->add_option("--profile", profile, "Profile CSV or coefficient JSON from a previous solve")->required();
  CLI::App* sweep = app.add_subcommand("sweep", "Solve over a grid of velocities (and exponents)");
  common(sweep);
  sweep->add_option("--workers", opts.workers, "Concurrent sweep points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!out.empty()) opts.out = out;
  if (!profile.empty()) opts.profile = profile;

  if (hom->parsed()) return cmd_solve_homogeneous(opts);
  if (non->parsed()) return cmd_solve_nonhomogeneous(opts);
  if (prop->parsed()) return cmd_propagate(opts);
  return cmd_sweep(opts);
}

}  // namespace solitwave::app
