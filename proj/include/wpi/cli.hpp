#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wpi {

/// Parsed invocation of the workbench. Specs are parsed and validated before
/// any computation runs; no partial outputs on invalid input.
struct RunConfig {
  std::string command;
  std::string rigidity_action;  // check | cosh-power | ode | comparison | rigid-case

  std::string model_spec;   // path to model JSON
  std::string weight_spec;  // path to weight JSON
  std::string end_spec;     // path to end JSON
  std::string weight_name;  // builtin shortcut: hardy | cartan_hadamard | green | natural
  std::string output_dir = ".";
  std::string format = "json";  // json | csv for the primary artifact
  bool emit_svg = false;
  std::string mode = "lambda1";  // spectral: lambda1 | poincare | bottom

  int n = 0;
  int grid_nodes = 0;     // 0 = module default
  double tol = 0.0;       // 0 = module default
  double horizon = 0.0;   // improper-tail horizon cap override
  double r0 = 1.0;
  double a = 0.0, b = 0.0;
  double r_max = 8.0;
  std::vector<double> radii{10.0, 20.0, 30.0};

  double alpha = 2.0, c1 = 1.0, big_c = 0.0;
  double tau_const = 1.0, eta0 = 1.0, deta0 = 0.0, step = 1e-3, t_max = 5.0;
  double mu = 0.0;  // constant potential for decay runs
};

/// Executes one subcommand. Exit code 0 on success, 2 when the run reports
/// hypothesis-violation findings, 1 on operational errors.
int run(const RunConfig& config);

/// Parses argv (CLI11) and dispatches to run().
int run_cli(int argc, const char* const* argv);

}  // namespace wpi
