#pragma once
// Subcommands of locc_cost. Each returns a process exit code.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locc/bounds.hpp"

namespace locc::cli {

enum class Format { csv, json };

Format parse_format(const std::string& s);

struct SweepConfig {
  double a_min = 0.70710678118654752440;
  double a_max = 1.0;
  std::size_t steps = 101;
  std::size_t rounds = 2;
  std::string out = "-";
  Format format = Format::csv;
  std::uint64_t seed = 42;
  std::size_t threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct MacSweepConfig {
  std::size_t density = 21;
  std::string out = "-";
  Format format = Format::csv;
  std::uint64_t seed = 42;
  std::size_t threads = 0;

  void validate() const;
};

struct VerifyConfig {
  double a = 0.89442719099991586;  // a^2 = 0.8
  std::vector<double> xs{0.94868329805051377};  // x^2 = 0.9
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
};

struct PovmConfig {
  std::size_t d = 3;
  std::uint64_t seed = 42;
};

/// Evaluates every row of the sweep grid, in index order.
std::vector<bounds::BoundsRow> sweep_rows(const SweepConfig& cfg);

struct MacRow {
  double a, c, avg_ent, mac_lower;
};
std::vector<MacRow> mac_sweep_rows(const MacSweepConfig& cfg);

void write_sweep(const SweepConfig& cfg, const std::vector<bounds::BoundsRow>& rows, std::ostream& os);
void write_mac_sweep(const MacSweepConfig& cfg, const std::vector<MacRow>& rows, std::ostream& os);

int cmd_sweep(const SweepConfig& cfg, std::ostream& log);
int cmd_mac_sweep(const MacSweepConfig& cfg, std::ostream& log);
int cmd_verify(const VerifyConfig& cfg, std::ostream& os);
int cmd_povm(const PovmConfig& cfg, std::ostream& os);
int cmd_asymptotics(const std::vector<double>& bs, std::ostream& os);
int cmd_demo(std::ostream& os);

/// %.12g, the precision of every numeric field written by the tool.
std::string format_number(double v);

}  // namespace locc::cli
