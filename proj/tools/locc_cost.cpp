// locc_cost: bounds sweeps, protocol verification and the worked examples.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locc/cli.hpp"

int main(int argc, char** argv) {
  using namespace locc::cli;
  CLI::App app{"Bounds on the ebit cost of two-party measurements, and LOCC protocol simulation"};
  app.require_subcommand(1);

  SweepConfig sweep;
  std::string sweep_format = "csv";
  auto* sweep_cmd = app.add_subcommand("sweep", "bounds on the cost of M_a over a grid in a");
  sweep_cmd->add_option("--a-min", sweep.a_min, "smallest a (>= 1/sqrt2)");
  sweep_cmd->add_option("--a-max", sweep.a_max, "largest a (<= 1)");
  sweep_cmd->add_option("--steps", sweep.steps, "grid points, endpoints included")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--rounds", sweep.rounds, "round cap of the multi-round protocol");
  sweep_cmd->add_option("--out", sweep.out, "output file, - for stdout");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--seed", sweep.seed, "recorded in the output header");
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads, 0 for all cores");

  MacSweepConfig mac;
  std::string mac_format = "csv";
  auto* mac_cmd = app.add_subcommand("mac-sweep", "lower bound for M_{a,c} over a grid in (a, c)");
  mac_cmd->add_option("--steps", mac.density, "grid points per axis")->check(CLI::PositiveNumber);
  mac_cmd->add_option("--out", mac.out, "output file, - for stdout");
  mac_cmd->add_option("--format", mac_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  mac_cmd->add_option("--seed", mac.seed, "recorded in the output header");
  mac_cmd->add_option("--threads", mac.threads, "worker threads, 0 for all cores");

  VerifyConfig verify;
  std::vector<double> xs;
  auto* verify_cmd = app.add_subcommand("verify", "exact and Monte Carlo checks of the multi-round protocol");
  verify_cmd->add_option("--a", verify.a, "measurement amplitude a");
  verify_cmd->add_option("--x", xs, "resource amplitude of each round (repeatable)");
  verify_cmd->add_option("--trials", verify.trials, "Monte Carlo runs");
  verify_cmd->add_option("--seed", verify.seed, "base seed");

  PovmConfig povm;
  auto* povm_cmd = app.add_subcommand("povm", "Pauli-invariant POVM from a random state, realized by Bell measurements");
  povm_cmd->add_option("--d", povm.d, "local dimension")->check(CLI::Range(2, 4));
  povm_cmd->add_option("--seed", povm.seed, "seed of the random state");

  std::vector<double> bs{1e-2, 1e-3, 1e-4};
  auto* asym_cmd = app.add_subcommand("asymptotics", "ratios of the bounds to their small-b approximations");
  asym_cmd->add_option("--b", bs, "values of b in (0, 0.1] (repeatable)");

  auto* demo_cmd = app.add_subcommand("demo", "three-qubit example protocol");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) {
      sweep.format = parse_format(sweep_format);
      return cmd_sweep(sweep, std::cerr);
    }
    if (*mac_cmd) {
      mac.format = parse_format(mac_format);
      return cmd_mac_sweep(mac, std::cerr);
    }
    if (*verify_cmd) {
      if (!xs.empty()) verify.xs = xs;
      return cmd_verify(verify, std::cout);
    }
    if (*povm_cmd) return cmd_povm(povm, std::cout);
    if (*asym_cmd) return cmd_asymptotics(bs, std::cout);
    if (*demo_cmd) return cmd_demo(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
