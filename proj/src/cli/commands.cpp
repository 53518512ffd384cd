#include "locc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "locc/entropy.hpp"
#include "locc/measurements.hpp"
#include "locc/protocol.hpp"

namespace locc::cli {

using nlohmann::json;

namespace {

constexpr double kOrderingSlack = 1e-9;

// Runs body(i) for i in [0, n) on a small pool; results land by index.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// JSON carries the same 12 significant digits as CSV.
double rounded(double v) { return std::stod(format_number(v)); }

double h(double z) { return quantum::binary_entropy(std::clamp(z, 0.0, 1.0)); }

// Opens `path` ("-" for stdout) and hands the stream to `write`.
int with_output(const std::string& path, std::ostream& log, const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return std::cout ? 0 : 1;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    log << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  write(f);
  f.flush();
  if (!f) {
    log << "error: failed writing " << path << "\n";
    return 1;
  }
  return 0;
}

std::vector<std::string> ordering_breaches(const bounds::BoundsRow& r) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const char* what) {
    if (!ok) out.emplace_back(what);
  };
  const double cap = std::min(r.upper_single, r.teleport_upper) + kOrderingSlack;
  need(r.avg_ent <= r.lower_absolute + kOrderingSlack, "avg_ent <= lower_absolute");
  need(r.lower_absolute <= r.upper_multiround + kOrderingSlack, "lower_absolute <= upper_multiround");
  need(r.upper_multiround <= cap, "upper_multiround <= min(upper_single, teleport_upper)");
  need(r.lower_single <= r.upper_single + kOrderingSlack, "lower_single <= upper_single");
  return out;
}

double z_score(std::size_t hits, std::size_t trials, double p) {
  const double n = static_cast<double>(trials);
  const double sigma = std::sqrt(n * p * (1.0 - p));
  const double diff = static_cast<double>(hits) - n * p;
  if (sigma == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / sigma;
}

bool failed_round(const protocol::RoundOutcome& r) {
  return (r.alice == 'P' && r.bob == "Q1") || (r.alice == 'Q' && r.bob == "P2");
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv or json)");
}

void SweepConfig::validate() const {
  const double lo = 0.70710678118654752440;
  if (!(a_min >= lo - 1e-12 && a_min < a_max && a_max <= 1.0))
    throw std::invalid_argument("sweep: need 1/sqrt2 <= a-min < a-max <= 1");
  if (steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
}

void MacSweepConfig::validate() const {
  if (density < 2) throw std::invalid_argument("mac-sweep: density must be at least 2");
}

std::vector<bounds::BoundsRow> sweep_rows(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<bounds::BoundsRow> rows(cfg.steps);
  const double lo = std::max(cfg.a_min, 0.70710678118654752440);
  parallel_for(cfg.steps, cfg.threads,
               [&](std::size_t i) { rows[i] = bounds::bounds_row(grid_point(lo, cfg.a_max, i, cfg.steps), cfg.rounds); });
  return rows;
}

std::vector<MacRow> mac_sweep_rows(const MacSweepConfig& cfg) {
  cfg.validate();
  const double lo = 0.70710678118654752440;
  const std::size_t n = cfg.density;
  std::vector<MacRow> rows(n * n);
  parallel_for(n * n, cfg.threads, [&](std::size_t idx) {
    const double a = grid_point(lo, 1.0, idx / n, n);
    const double c = grid_point(lo, 1.0, idx % n, n);
    const auto m = quantum::MacParams::from_ac(a, c);
    rows[idx] = {a, c, bounds::avg_entanglement_lower(quantum::mac_measurement(m)), bounds::mac_lower(m)};
  });
  return rows;
}

void write_sweep(const SweepConfig& cfg, const std::vector<bounds::BoundsRow>& rows, std::ostream& os) {
  if (cfg.format == Format::csv) {
    os << "#seed=" << cfg.seed << "\n";
    os << "a,b,ent_states,avg_ent,lower_absolute,lower_single,upper_single,upper_multiround,teleport_upper\n";
    for (const auto& r : rows) {
      const double fields[] = {r.a,           r.b,           h(r.a * r.a),       r.avg_ent,        r.lower_absolute,
                               r.lower_single, r.upper_single, r.upper_multiround, r.teleport_upper};
      for (std::size_t i = 0; i < std::size(fields); ++i) os << (i ? "," : "") << format_number(fields[i]);
      os << "\n";
    }
    return;
  }
  json doc;
  doc["seed"] = cfg.seed;
  doc["rounds"] = cfg.rounds;
  doc["rows"] = json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"a", rounded(r.a)},
                           {"b", rounded(r.b)},
                           {"ent_states", rounded(h(r.a * r.a))},
                           {"avg_ent", rounded(r.avg_ent)},
                           {"lower_absolute", rounded(r.lower_absolute)},
                           {"lower_single", rounded(r.lower_single)},
                           {"upper_single", rounded(r.upper_single)},
                           {"upper_multiround", rounded(r.upper_multiround)},
                           {"multiround_rounds", r.multiround_rounds},
                           {"teleport_upper", rounded(r.teleport_upper)}});
  }
  os << doc.dump(2) << "\n";
}

void write_mac_sweep(const MacSweepConfig& cfg, const std::vector<MacRow>& rows, std::ostream& os) {
  if (cfg.format == Format::csv) {
    os << "#seed=" << cfg.seed << "\n";
    os << "a,c,avg_ent,mac_lower\n";
    for (const auto& r : rows)
      os << format_number(r.a) << "," << format_number(r.c) << "," << format_number(r.avg_ent) << ","
         << format_number(r.mac_lower) << "\n";
    return;
  }
  json doc;
  doc["seed"] = cfg.seed;
  doc["rows"] = json::array();
  for (const auto& r : rows)
    doc["rows"].push_back(
        {{"a", rounded(r.a)}, {"c", rounded(r.c)}, {"avg_ent", rounded(r.avg_ent)}, {"mac_lower", rounded(r.mac_lower)}});
  os << doc.dump(2) << "\n";
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& log) {
  const auto rows = sweep_rows(cfg);
  int status = with_output(cfg.out, log, [&](std::ostream& os) { write_sweep(cfg, rows, os); });
  for (const auto& r : rows)
    for (const auto& what : ordering_breaches(r)) {
      log << "invariant breached at a=" << format_number(r.a) << ": " << what << "\n";
      status = 2;
    }
  return status;
}

int cmd_mac_sweep(const MacSweepConfig& cfg, std::ostream& log) {
  const auto rows = mac_sweep_rows(cfg);
  int status = with_output(cfg.out, log, [&](std::ostream& os) { write_mac_sweep(cfg, rows, os); });
  for (const auto& r : rows)
    if (r.mac_lower < -kOrderingSlack) {
      log << "invariant breached at a=" << format_number(r.a) << ", c=" << format_number(r.c)
          << ": negative lower bound\n";
      status = 2;
    }
  return status;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& os) {
  const bounds::RoundSchedule schedule(cfg.xs);
  int status = 0;
  os << "a=" << format_number(cfg.a) << " rounds=" << schedule.rounds() << " trials=" << cfg.trials
     << " seed=" << cfg.seed << "\n";

  const auto summary = protocol::aggregate_protocol(cfg.a, schedule);
  try {
    protocol::induced_povm(cfg.a, schedule);
    os << "exactness: induced POVM equals M_a\n";
  } catch (const std::logic_error& e) {
    os << "exactness: FAILED " << e.what() << "\n";
    status = 2;
  }
  const double recursion = bounds::multiround_upper(cfg.a, schedule);
  const double cost_gap = std::abs(summary.expected_cost - recursion);
  os << "expected_cost=" << format_number(summary.expected_cost) << " recursion=" << format_number(recursion)
     << " |diff|=" << format_number(cost_gap) << "\n";
  os << "total_probability=" << format_number(summary.total_probability) << "\n";
  if (cost_gap > protocol::kExactTolerance || std::abs(summary.total_probability - 1.0) > protocol::kExactTolerance)
    status = 2;

  // Exact reference: every M_a outcome has probability 1/4 on the mixed
  // input, and round j is reached with probability F_1 ... F_{j-1}.
  std::vector<double> reach{1.0};
  for (double cur = cfg.a; double x : schedule.xs) {
    const bool product = bounds::is_product(cur, quantum::complement_amplitude(cur));
    reach.push_back(product ? 0.0 : reach.back() * bounds::failure_probability(cur, x));
    if (!product) cur = bounds::next_parameter(cur, x).raw;
  }
  std::array<std::size_t, 4> outcome_hits{};
  std::vector<std::size_t> reach_hits(reach.size(), 0);
  double mc_cost = 0.0;
  protocol::Sampler inputs(cfg.seed);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const auto run = protocol::run_protocol(cfg.a, schedule, protocol::sample_mixed_input(inputs), cfg.seed + 1 + t);
    ++outcome_hits[run.trace.outcome_index];
    std::size_t failed = 0;
    for (const auto& r : run.trace.round_outcomes) failed += failed_round(r) ? 1 : 0;
    for (std::size_t j = 0; j <= failed && j < reach_hits.size(); ++j) ++reach_hits[j];
    mc_cost += run.trace.ebits_consumed;
  }
  if (cfg.trials > 0) {
    os << "event,exact,monte_carlo,z\n";
    for (std::size_t k = 0; k < 4; ++k) {
      const double z = z_score(outcome_hits[k], cfg.trials, 0.25);
      os << protocol::kMaOutcomeNames[k] << "," << format_number(0.25) << ","
         << format_number(static_cast<double>(outcome_hits[k]) / static_cast<double>(cfg.trials)) << ","
         << format_number(z) << "\n";
      if (std::abs(z) > 3.0) status = 2;
    }
    for (std::size_t j = 1; j < reach.size(); ++j) {
      const double z = z_score(reach_hits[j], cfg.trials, reach[j]);
      os << "fail_rounds_1_to_" << j << "," << format_number(reach[j]) << ","
         << format_number(static_cast<double>(reach_hits[j]) / static_cast<double>(cfg.trials)) << ","
         << format_number(z) << "\n";
      if (std::abs(z) > 3.0) status = 2;
    }
    os << "mean_cost," << format_number(summary.expected_cost) << ","
       << format_number(mc_cost / static_cast<double>(cfg.trials)) << ",\n";
  }
  os << (status == 0 ? "verify: ok\n" : "verify: FAILED\n");
  return status;
}

int cmd_povm(const PovmConfig& cfg, std::ostream& os) {
  const auto phi = quantum::random_state({cfg.d, cfg.d}, cfg.seed);
  const quantum::Ensemble ensemble{{1.0, phi}};
  const auto povm = quantum::pauli_invariant_povm(cfg.d, ensemble);
  const auto summary = protocol::aggregate_pauli_protocol(cfg.d, ensemble);
  double element_residual = 0.0;
  for (std::size_t i = 0; i < povm.size(); ++i)
    element_residual = std::max(element_residual, summary.povm.elements[i].max_abs_diff(povm.element_matrix(i)));
  const double cost_residual = std::abs(summary.expected_cost - bounds::avg_entanglement_lower(povm));
  os << "d=" << cfg.d << " seed=" << cfg.seed << " elements=" << povm.size() << "\n";
  os << "completeness_residual=" << format_number(povm.completeness_residual()) << "\n";
  os << "protocol_element_residual=" << format_number(element_residual) << "\n";
  os << "protocol_cost=" << format_number(summary.expected_cost) << "\n";
  os << "cost_equality_residual=" << format_number(cost_residual) << "\n";
  const bool ok = povm.completeness_residual() <= quantum::kCompletenessTolerance &&
                  element_residual <= protocol::kExactTolerance && cost_residual <= protocol::kExactTolerance;
  return ok ? 0 : 2;
}

int cmd_asymptotics(const std::vector<double>& bs, std::ostream& os) {
  for (double b : bs) {
    if (!(b > 0.0 && b <= 0.1)) throw std::invalid_argument("asymptotics: b must lie in (0, 0.1]");
    // Below about 1e-7 the double nearest sqrt(1 - b^2) no longer pins down b.
    if (std::abs(quantum::complement_amplitude(quantum::complement_amplitude(b)) / b - 1.0) > 1e-6)
      throw std::invalid_argument("asymptotics: b = " + format_number(b) + " is below double resolution of a");
  }
  os << "b,single_round_upper_ratio,single_round_lower_ratio,absolute_lower_ratio\n";
  int status = 0;
  for (double b : bs) {
    const double a = quantum::complement_amplitude(b);
    const double approx = bounds::asymptotic_single_round(b);
    const double upper = bounds::single_round_upper(a);
    const double lower = bounds::single_round_lower(a);
    os << format_number(b) << "," << format_number(upper / approx) << "," << format_number(lower / approx) << ","
       << format_number(bounds::absolute_lower(a) / bounds::asymptotic_absolute_lower(b)) << "\n";
    if (lower > upper + kOrderingSlack) status = 2;
  }
  return status;
}

int cmd_demo(std::ostream& os) {
  const auto result = protocol::demo_three_qubit();
  os << "average_cost=" << format_number(result.average_cost) << "\n";
  return result.povm.completeness_residual() <= protocol::kExactTolerance ? 0 : 2;
}

}  // namespace locc::cli
