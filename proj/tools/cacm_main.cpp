// Command-line front end: run experiments, print analytic curves, self-check.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cacm/harness.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> parallel;
  std::string out_path;
  std::string dump_graph_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("config", flags.config_path, "experiment config file")->required();
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--trials", flags.trials, "override the trial count");
  cmd->add_option("--parallel", flags.parallel, "override the worker count");
  cmd->add_option("--out", flags.out_path, "write CSV here instead of the config's out path");
  cmd->add_option("--dump-graphs", flags.dump_graph_dir,
                  "write DOT files for the first sampled instance into this directory");
}

cacm::ExperimentConfig load_config(const CommonFlags& flags) {
  cacm::ExperimentConfig cfg = cacm::parse_config_file(flags.config_path);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.trials) cfg.trials = *flags.trials;
  if (flags.parallel) cfg.parallel = *flags.parallel;
  if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
  if (!flags.dump_graph_dir.empty()) cfg.dump_graph_dir = flags.dump_graph_dir;
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.parallel < 1) throw std::invalid_argument("parallel must be >= 1");
  return cfg;
}

void write_curve(const cacm::ExperimentConfig& cfg, const cacm::RateCurve& curve) {
  if (cfg.out_path.empty()) {
    cacm::emit_csv(curve, std::cout);
  } else {
    cacm::emit_csv_file(curve, cfg.out_path);
    std::cout << "wrote " << curve.size() << " rows to " << cfg.out_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-aided coded multicast simulator and analytic-curve evaluator"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the configured experiment and emit measured rates");
  add_common(simulate, sim_flags);

  CommonFlags cmp_flags;
  CLI::App* compare = app.add_subcommand(
      "compare", "run the experiment and attach the analytic columns to each row");
  add_common(compare, cmp_flags);

  CommonFlags bnd_flags;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "evaluate the analytic curves alone on the config's memory grid");
  add_common(bounds, bnd_flags);

  app.add_subcommand("selftest", "run the built-in fixture checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) {
      const cacm::ExperimentConfig cfg = load_config(sim_flags);
      const cacm::RateCurve curve = cacm::run_experiment(cfg);
      write_curve(cfg, curve);
    } else if (compare->parsed()) {
      const cacm::ExperimentConfig cfg = load_config(cmp_flags);
      cacm::RateCurve curve = cacm::run_experiment(cfg);
      cacm::attach_bounds(cfg, curve);
      write_curve(cfg, curve);
    } else if (bounds->parsed()) {
      const cacm::ExperimentConfig cfg = load_config(bnd_flags);
      std::ostringstream buffer;
      cacm::emit_bounds_csv(cfg, buffer);
      if (cfg.out_path.empty()) {
        std::cout << buffer.str();
      } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
        out << buffer.str();
        std::cout << "wrote analytic curves to " << cfg.out_path << "\n";
      }
    } else {
      const int failures = cacm::selftest(std::cout);
      if (failures != 0) {
        std::cerr << failures << " selftest check(s) failed\n";
        return 1;
      }
      std::cout << "selftest passed\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
