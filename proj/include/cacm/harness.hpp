// Experiment harness: scenario configuration, Monte-Carlo driving, rate
// aggregation, analytic-bound attachment, and CSV emission.
//
// Reproducibility contract: for a fixed config (including seed), rerunning
// any scenario produces byte-identical CSV output.  Per-trial work is
// parallelizable; results are stored per trial index and reduced in index
// order, so the worker count never changes the output.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cacm {

enum class Scenario { StaticSymmetric, Dynamic, TwoFile, MotivatingExample };

enum class Scheme { CaGgc, UnawareGgc, NaiveMulticast, Oracle };

// Canonical scheme labels as written to CSV: "CA-GGC", "Unaware-GGC",
// "NaiveMulticast", "Oracle".
std::string scheme_name(Scheme scheme);

enum class DemandMode { Average, WorstCase };

struct ExperimentConfig {
  Scenario scenario = Scenario::StaticSymmetric;
  int n_receivers = 0;
  int n_files = 0;
  int n_packets = 64;
  double delta = 0.0;        // intra-cluster fraction (static/two-file) or
                             // cross-version fraction (dynamic/motivating)
  double file_entropy = 1.0;
  int cluster_size = 1;
  double update_prob = 0.0;  // per-file update probability (dynamic)
  std::vector<double> memory_grid;  // entropy units
  int trials = 200;
  std::uint64_t seed = 0;
  std::vector<Scheme> schemes;
  std::string out_path;
  int parallel = 1;
  std::string dump_graph_dir;  // when set, trial-0 graphs are written as .dot
  int oracle_limit = 10;
  DemandMode demand_mode = DemandMode::Average;
};

// Parses the "[scenario]" + "key = value" config format (see README for the
// key list).  Unknown keys, malformed values, and scenario-invariant
// violations raise std::invalid_argument with a line reference.
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>");
ExperimentConfig parse_config_file(const std::string& path);

struct RateRow {
  double memory = 0.0;  // entropy units, matches the config grid
  Scheme scheme = Scheme::CaGgc;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;  // sample standard deviation / sqrt(trials)
  std::optional<double> bound1;       // scenario's coded-delivery bound
  std::optional<double> bound2;       // plain multicast of distinct requests
  std::optional<double> lower_bound;  // converse, where one is known
};

using RateCurve = std::vector<RateRow>;

// Monte-Carlo (or exact, for the deterministic scenarios) rate curves.
// Decode failures and per-trial ordering violations (coded beating naive,
// oracle beaten by greedy) are hard errors.
RateCurve run_static(const ExperimentConfig& cfg);
RateCurve run_dynamic(const ExperimentConfig& cfg);
RateCurve run_two_file(const ExperimentConfig& cfg);
RateCurve run_motivating(const ExperimentConfig& cfg);
RateCurve run_experiment(const ExperimentConfig& cfg);  // dispatch on scenario

// Fills the analytic columns of a simulated curve in place.
void attach_bounds(const ExperimentConfig& cfg, RateCurve& curve);

// Rate-curve CSV: header "M,scheme,mean_rate,stderr,bound1,bound2,lower_bound",
// one row per (memory, scheme) sorted by (memory, scheme name), 12
// significant digits, final newline.  Empty optionals emit empty cells.
void emit_csv(const RateCurve& curve, std::ostream& out);
void emit_csv_file(const RateCurve& curve, const std::string& path);

// Analytic sweep over the config's memory grid (no simulation):
// "M,coded,representative,envelope,multicast,two_file_rate,two_file_lower",
// cells left empty where a column does not apply to the scenario.
void emit_bounds_csv(const ExperimentConfig& cfg, std::ostream& out);

// Built-in worked-example checks; prints one line per check to `out` and
// returns the number of failures (0 == all good).
int selftest(std::ostream& out);

}  // namespace cacm
