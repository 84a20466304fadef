// Experiment harness implementation.

#include "cacm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cacm/bounds.hpp"
#include "cacm/coloring.hpp"
#include "cacm/fixtures.hpp"
#include "cacm/rng.hpp"

namespace cacm {

namespace {

constexpr std::uint64_t kPlacementStream = 0xA1;
constexpr std::uint64_t kDemandStream = 0xA2;
constexpr std::uint64_t kUpdateStream = 0xA3;
constexpr double kOrderTol = 1e-9;

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial, std::uint64_t stream) {
  return mix_seed(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial) + 0x51EDull), stream);
}

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void config_error(const std::string& origin, int line, const std::string& what) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    config_error(origin, line, "expected a number, got '" + value + "'");
  }
  if (used != value.size()) config_error(origin, line, "trailing junk in number '" + value + "'");
  return v;
}

long long parse_int(const std::string& origin, int line, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    config_error(origin, line, "expected an integer, got '" + value + "'");
  }
  if (used != value.size()) config_error(origin, line, "trailing junk in integer '" + value + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

Scheme parse_scheme(const std::string& origin, int line, const std::string& token) {
  const std::string t = lower(token);
  if (t == "ca-ggc" || t == "ca_ggc" || t == "ca") return Scheme::CaGgc;
  if (t == "unaware-ggc" || t == "unaware_ggc" || t == "unaware") return Scheme::UnawareGgc;
  if (t == "naivemulticast" || t == "naive") return Scheme::NaiveMulticast;
  if (t == "oracle") return Scheme::Oracle;
  config_error(origin, line, "unknown scheme '" + token + "'");
}

bool has_scheme(const ExperimentConfig& cfg, Scheme s) {
  return std::find(cfg.schemes.begin(), cfg.schemes.end(), s) != cfg.schemes.end();
}

LibraryModel scenario_model(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::StaticSymmetric:
      return LibraryModel::symmetric(cfg.n_files, cfg.n_packets, cfg.file_entropy, cfg.delta,
                                     cfg.cluster_size);
    case Scenario::Dynamic: {
      DynamicParams dyn;
      dyn.update_prob = {cfg.update_prob};
      dyn.update_delta = cfg.delta;
      return LibraryModel::symmetric(cfg.n_files, cfg.n_packets, cfg.file_entropy, cfg.delta, 1,
                                     dyn);
    }
    case Scenario::TwoFile:
      return LibraryModel(2, 2, cfg.file_entropy, cfg.delta, {{1, 2}});
    case Scenario::MotivatingExample: {
      DynamicParams dyn;
      dyn.update_prob = {1.0, 1.0};
      dyn.update_delta = cfg.delta;
      return LibraryModel(2, 2, cfg.file_entropy, 0.0, {{1}, {2}}, dyn);
    }
  }
  throw std::logic_error("unreachable scenario");
}

// Per-scheme rate on one realized instance.  Throws on decode failure.
double evaluate_scheme(Scheme scheme, const LibraryModel& model, const CacheConfig& cache,
                       const DemandConfig& demand, int oracle_limit) {
  const double h = model.packet_entropy();
  switch (scheme) {
    case Scheme::NaiveMulticast: {
      std::size_t total = 0;
      for (const auto& targets : demand.targets) total += targets.size();
      return static_cast<double>(total) * h / model.file_entropy();
    }
    case Scheme::CaGgc:
    case Scheme::UnawareGgc: {
      const ConflictGraph graph =
          build_augmented_graph(model, cache, demand, scheme == Scheme::CaGgc);
      SchemeResult res = ggc_best(graph, model, cache);
      if (!decode_verify(res.codeword, cache, demand, model))
        throw std::runtime_error("decode failure in " + scheme_name(scheme));
      return res.rate;
    }
    case Scheme::Oracle: {
      const ConflictGraph graph = build_augmented_graph(model, cache, demand, true);
      SchemeResult res = exhaustive_min_rate(graph, model, cache, oracle_limit);
      if (!decode_verify(res.codeword, cache, demand, model))
        throw std::runtime_error("decode failure in Oracle");
      return res.rate;
    }
  }
  throw std::logic_error("unreachable scheme");
}

void check_trial_order(const ExperimentConfig& cfg, const std::vector<double>& rates) {
  const auto rate_of = [&](Scheme s) -> const double* {
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
      if (cfg.schemes[i] == s) return &rates[i];
    }
    return nullptr;
  };
  const double* ca = rate_of(Scheme::CaGgc);
  const double* naive = rate_of(Scheme::NaiveMulticast);
  const double* oracle = rate_of(Scheme::Oracle);
  if (ca && naive && *ca > *naive + kOrderTol)
    throw std::runtime_error("ordering violation: CA-GGC above NaiveMulticast");
  if (oracle && ca && *oracle > *ca + kOrderTol)
    throw std::runtime_error("ordering violation: Oracle above CA-GGC");
  if (oracle && naive && *oracle > *naive + kOrderTol)
    throw std::runtime_error("ordering violation: Oracle above NaiveMulticast");
}

void dump_instance_graphs(const ExperimentConfig& cfg, const LibraryModel& model,
                          const CacheConfig& cache, const DemandConfig& demand,
                          const std::string& tag) {
  if (cfg.dump_graph_dir.empty()) return;
  std::filesystem::create_directories(cfg.dump_graph_dir);
  const auto write = [&](const std::string& name, const ConflictGraph& graph) {
    std::ofstream out(cfg.dump_graph_dir + "/" + name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write graph dump in " + cfg.dump_graph_dir);
    out << to_dot(graph);
  };
  write(tag + "_aware.dot", build_augmented_graph(model, cache, demand, true));
  write(tag + "_conventional.dot", build_augmented_graph(model, cache, demand, false));
}

struct Aggregate {
  double mean = 0.0;
  double stderr_rate = 0.0;
};

Aggregate aggregate_rates(const std::vector<double>& values) {
  Aggregate a;
  const std::size_t n = values.size();
  if (n == 0) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    const double var = ss / static_cast<double>(n - 1);
    a.stderr_rate = std::sqrt(var / static_cast<double>(n));
  }
  return a;
}

void sort_rows(RateCurve& curve) {
  std::stable_sort(curve.begin(), curve.end(), [](const RateRow& a, const RateRow& b) {
    if (a.memory != b.memory) return a.memory < b.memory;
    return scheme_name(a.scheme) < scheme_name(b.scheme);
  });
}

// Shared Monte-Carlo driver for the random-placement scenarios.
RateCurve run_monte_carlo(const ExperimentConfig& cfg, const LibraryModel& model) {
  const int K = cfg.n_receivers;
  const int trials = cfg.trials;
  const CachingDistribution dist = CachingDistribution::uniform(cfg.n_files);
  RateCurve rows;

  for (double memory : cfg.memory_grid) {
    std::vector<std::vector<double>> rates(cfg.schemes.size(),
                                           std::vector<double>(static_cast<std::size_t>(trials)));
    const int workers = std::max(1, std::min(cfg.parallel, trials));
    std::atomic<int> next{0};
    std::vector<std::string> errors(static_cast<std::size_t>(workers));

    const auto body = [&](int worker) {
      try {
        for (;;) {
          const int t = next.fetch_add(1);
          if (t >= trials) break;
          const CacheConfig cache = random_fractional_place(
              model, dist, memory, K, trial_seed(cfg, t, kPlacementStream));
          Rng demand_rng(trial_seed(cfg, t, kDemandStream));
          std::vector<int> files(static_cast<std::size_t>(K));
          for (int k = 0; k < K; ++k) {
            files[static_cast<std::size_t>(k)] =
                1 + static_cast<int>(demand_rng.bounded(static_cast<std::uint64_t>(cfg.n_files)));
          }
          std::vector<bool> flags;
          if (model.is_dynamic()) flags = sample_updates(model, trial_seed(cfg, t, kUpdateStream));
          const DemandConfig demand = build_demand(model, cache, files, flags);
          if (t == 0) dump_instance_graphs(cfg, model, cache, demand, "m" + format_sig(memory));

          std::vector<double> trial_rates(cfg.schemes.size());
          for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
            trial_rates[si] =
                evaluate_scheme(cfg.schemes[si], model, cache, demand, cfg.oracle_limit);
          }
          check_trial_order(cfg, trial_rates);
          for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
            rates[si][static_cast<std::size_t>(t)] = trial_rates[si];
          }
        }
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(worker)] = e.what();
        next.store(trials);  // stop remaining work
      }
    };

    if (workers == 1) {
      body(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
      for (auto& th : pool) th.join();
    }
    for (const std::string& err : errors) {
      if (!err.empty()) throw std::runtime_error("experiment failed: " + err);
    }

    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
      const Aggregate a = aggregate_rates(rates[si]);
      RateRow row;
      row.memory = memory;
      row.scheme = cfg.schemes[si];
      row.mean_rate = a.mean;
      row.stderr_rate = a.stderr_rate;
      rows.push_back(row);
    }
  }
  sort_rows(rows);
  return rows;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::CaGgc: return "CA-GGC";
    case Scheme::UnawareGgc: return "Unaware-GGC";
    case Scheme::NaiveMulticast: return "NaiveMulticast";
    case Scheme::Oracle: return "Oracle";
  }
  return "?";
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  bool scenario_seen = false;
  bool trials_set = false;
  bool grid_set = false;
  bool schemes_set = false;
  bool delta_set = false;
  bool packets_set = false;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') config_error(origin, line_no, "unterminated scenario header");
      if (scenario_seen) config_error(origin, line_no, "duplicate scenario header");
      const std::string name = lower(trim(line.substr(1, line.size() - 2)));
      if (name == "static" || name == "static_symmetric") {
        cfg.scenario = Scenario::StaticSymmetric;
      } else if (name == "dynamic") {
        cfg.scenario = Scenario::Dynamic;
      } else if (name == "two_file" || name == "two-file" || name == "twofile") {
        cfg.scenario = Scenario::TwoFile;
      } else if (name == "motivating" || name == "motivating_example") {
        cfg.scenario = Scenario::MotivatingExample;
      } else {
        config_error(origin, line_no, "unknown scenario '" + name + "'");
      }
      scenario_seen = true;
      continue;
    }
    if (!scenario_seen) config_error(origin, line_no, "expected [scenario] header first");

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) config_error(origin, line_no, "expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) config_error(origin, line_no, "empty value for '" + key + "'");

    if (key == "receivers" || key == "k") {
      cfg.n_receivers = static_cast<int>(parse_int(origin, line_no, value));
    } else if (key == "files" || key == "n") {
      cfg.n_files = static_cast<int>(parse_int(origin, line_no, value));
    } else if (key == "packets" || key == "b") {
      cfg.n_packets = static_cast<int>(parse_int(origin, line_no, value));
      packets_set = true;
    } else if (key == "delta") {
      cfg.delta = parse_double(origin, line_no, value);
      delta_set = true;
    } else if (key == "file_entropy" || key == "h") {
      cfg.file_entropy = parse_double(origin, line_no, value);
    } else if (key == "cluster_size" || key == "g_delta" || key == "cluster") {
      cfg.cluster_size = static_cast<int>(parse_int(origin, line_no, value));
    } else if (key == "update_prob" || key == "pi") {
      cfg.update_prob = parse_double(origin, line_no, value);
    } else if (key == "memory_grid" || key == "memory") {
      cfg.memory_grid.clear();
      for (const std::string& tok : split_list(value)) {
        cfg.memory_grid.push_back(parse_double(origin, line_no, tok));
      }
      grid_set = true;
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(origin, line_no, value));
      trials_set = true;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(origin, line_no, value));
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const std::string& tok : split_list(value)) {
        cfg.schemes.push_back(parse_scheme(origin, line_no, tok));
      }
      schemes_set = true;
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "parallel") {
      cfg.parallel = static_cast<int>(parse_int(origin, line_no, value));
    } else if (key == "oracle_limit") {
      cfg.oracle_limit = static_cast<int>(parse_int(origin, line_no, value));
    } else if (key == "demand_mode") {
      const std::string mode = lower(value);
      if (mode == "average") {
        cfg.demand_mode = DemandMode::Average;
      } else if (mode == "worst" || mode == "worst_case") {
        cfg.demand_mode = DemandMode::WorstCase;
      } else {
        config_error(origin, line_no, "unknown demand_mode '" + value + "'");
      }
    } else {
      config_error(origin, line_no, "unknown key '" + key + "'");
    }
  }
  if (!scenario_seen) throw std::invalid_argument(origin + ": missing [scenario] header");

  // Scenario defaults.
  const double H = cfg.file_entropy;
  switch (cfg.scenario) {
    case Scenario::StaticSymmetric:
      if (!schemes_set)
        cfg.schemes = {Scheme::CaGgc, Scheme::UnawareGgc, Scheme::NaiveMulticast};
      break;
    case Scenario::Dynamic:
      if (!schemes_set)
        cfg.schemes = {Scheme::CaGgc, Scheme::UnawareGgc, Scheme::NaiveMulticast};
      break;
    case Scenario::TwoFile:
      if (cfg.n_receivers == 0) cfg.n_receivers = 2;
      if (cfg.n_files == 0) cfg.n_files = 2;
      if (!packets_set) cfg.n_packets = 2;
      if (cfg.cluster_size == 1) cfg.cluster_size = 2;
      if (!schemes_set) cfg.schemes = {Scheme::Oracle};
      if (!grid_set) {
        for (int i = 0; i <= 200; ++i) cfg.memory_grid.push_back(2.0 * H * i / 200.0);
      }
      if (!trials_set) cfg.trials = 1;
      break;
    case Scenario::MotivatingExample:
      if (cfg.n_receivers == 0) cfg.n_receivers = 2;
      if (cfg.n_files == 0) cfg.n_files = 2;
      if (!packets_set) cfg.n_packets = 2;
      if (!delta_set) cfg.delta = 0.5;
      cfg.update_prob = 1.0;
      cfg.demand_mode = DemandMode::WorstCase;
      if (!schemes_set)
        cfg.schemes = {Scheme::CaGgc, Scheme::UnawareGgc, Scheme::NaiveMulticast, Scheme::Oracle};
      if (!grid_set) cfg.memory_grid = {H};
      if (!trials_set) cfg.trials = 1;
      break;
  }
  if (!grid_set && cfg.memory_grid.empty() && cfg.scenario != Scenario::TwoFile &&
      cfg.scenario != Scenario::MotivatingExample) {
    throw std::invalid_argument(origin + ": memory_grid is required");
  }

  // Validation.
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument(origin + ": " + what);
  };
  if (cfg.n_receivers < 1 || cfg.n_receivers > 32) fail("receivers must lie in [1, 32]");
  if (cfg.n_files < 1) fail("files must be >= 1");
  if (cfg.n_packets < 1) fail("packets must be >= 1");
  if (!(H > 0.0)) fail("file_entropy must be > 0");
  if (cfg.trials < 1) fail("trials must be >= 1");
  if (cfg.parallel < 1) fail("parallel must be >= 1");
  if (cfg.oracle_limit < 1) fail("oracle_limit must be >= 1");
  if (!(cfg.delta >= 0.0 && cfg.delta < 1.0)) fail("delta must lie in [0, 1)");
  if (cfg.schemes.empty()) fail("schemes must not be empty");
  for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.schemes.size(); ++j) {
      if (cfg.schemes[i] == cfg.schemes[j]) fail("duplicate scheme in schemes list");
    }
  }
  if (cfg.memory_grid.empty()) fail("memory_grid must not be empty");

  const double max_memory =
      (cfg.scenario == Scenario::TwoFile || cfg.scenario == Scenario::MotivatingExample)
          ? 2.0 * H
          : cfg.n_files * H;
  for (double m : cfg.memory_grid) {
    if (!(m >= 0.0 && m <= max_memory + 1e-9)) fail("memory grid value outside [0, capacity]");
  }

  switch (cfg.scenario) {
    case Scenario::StaticSymmetric:
      if (cfg.cluster_size < 1 || cfg.n_files % cfg.cluster_size != 0)
        fail("cluster_size must divide files");
      if (cfg.update_prob != 0.0) fail("static scenario does not take update_prob");
      break;
    case Scenario::Dynamic:
      if (cfg.cluster_size != 1) fail("dynamic scenario requires cluster_size = 1");
      if (!(cfg.update_prob >= 0.0 && cfg.update_prob <= 1.0))
        fail("update_prob must lie in [0, 1]");
      break;
    case Scenario::TwoFile:
      if (cfg.n_receivers != 2 || cfg.n_files != 2 || cfg.n_packets != 2)
        fail("two-file scenario is fixed at 2 receivers, 2 files, 2 packets");
      if (cfg.cluster_size != 2) fail("two-file scenario requires cluster_size = 2");
      if (cfg.schemes != std::vector<Scheme>{Scheme::Oracle})
        fail("two-file scenario evaluates the exhaustive encoder only (schemes = oracle)");
      break;
    case Scenario::MotivatingExample:
      if (cfg.n_receivers != 2 || cfg.n_files != 2 || cfg.n_packets != 2)
        fail("motivating scenario is fixed at 2 receivers, 2 files, 2 packets");
      if (cfg.cluster_size != 1) fail("motivating scenario requires cluster_size = 1");
      break;
  }

  // The exhaustive scheme is viable only when every graph it will see is
  // small; gate on the worst case so misconfiguration fails fast.
  if (has_scheme(cfg, Scheme::Oracle)) {
    const long long per_root =
        (cfg.scenario == Scenario::Dynamic || cfg.scenario == Scenario::MotivatingExample)
            ? 2
            : cfg.cluster_size;
    const long long worst = static_cast<long long>(cfg.n_receivers) * cfg.n_packets * per_root;
    if (worst > cfg.oracle_limit)
      fail("Oracle scheme requested but worst-case graph size " + std::to_string(worst) +
           " exceeds oracle_limit " + std::to_string(cfg.oracle_limit));
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return parse_config(in, path);
}

RateCurve run_static(const ExperimentConfig& cfg) {
  if (cfg.scenario != Scenario::StaticSymmetric)
    throw std::invalid_argument("run_static: config is not a static scenario");
  return run_monte_carlo(cfg, scenario_model(cfg));
}

RateCurve run_dynamic(const ExperimentConfig& cfg) {
  if (cfg.scenario != Scenario::Dynamic)
    throw std::invalid_argument("run_dynamic: config is not a dynamic scenario");
  return run_monte_carlo(cfg, scenario_model(cfg));
}

RateCurve run_two_file(const ExperimentConfig& cfg) {
  if (cfg.scenario != Scenario::TwoFile)
    throw std::invalid_argument("run_two_file: config is not a two-file scenario");
  const LibraryModel model = scenario_model(cfg);
  const double H = cfg.file_entropy;
  const std::vector<std::vector<int>> demands = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};

  // Exact corner rates at memory 0, H, 2H via the exhaustive encoder,
  // averaged (or maximized) over the four equiprobable demands.
  std::vector<double> corner_rate;
  for (int corner = 0; corner <= 2; ++corner) {
    const double memory = corner * H;
    const CacheConfig cache = deterministic_place(NamedPlacement::TwoFileCross, memory, model);
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t d = 0; d < demands.size(); ++d) {
      const DemandConfig demand = build_demand(model, cache, demands[d]);
      const ConflictGraph graph = build_augmented_graph(model, cache, demand, true);
      SchemeResult res = exhaustive_min_rate(graph, model, cache, cfg.oracle_limit);
      if (!decode_verify(res.codeword, cache, demand, model))
        throw std::runtime_error("decode failure in two-file corner evaluation");
      if (!cfg.dump_graph_dir.empty()) {
        dump_instance_graphs(cfg, model, cache, demand,
                             "corner" + std::to_string(corner) + "_d" +
                                 std::to_string(demands[d][0]) + std::to_string(demands[d][1]));
      }
      sum += res.rate;
      worst = std::max(worst, res.rate);
    }
    corner_rate.push_back(cfg.demand_mode == DemandMode::Average
                              ? sum / static_cast<double>(demands.size())
                              : worst);
  }

  // Memory sharing between adjacent corners gives the full achievable curve.
  RateCurve rows;
  for (double memory : cfg.memory_grid) {
    const double t = memory / H;
    double value = 0.0;
    if (t <= 1.0) {
      value = corner_rate[0] + (corner_rate[1] - corner_rate[0]) * t;
    } else {
      value = corner_rate[1] + (corner_rate[2] - corner_rate[1]) * (t - 1.0);
    }
    RateRow row;
    row.memory = memory;
    row.scheme = Scheme::Oracle;
    row.mean_rate = value;
    row.stderr_rate = 0.0;
    rows.push_back(row);
  }
  sort_rows(rows);
  return rows;
}

RateCurve run_motivating(const ExperimentConfig& cfg) {
  if (cfg.scenario != Scenario::MotivatingExample)
    throw std::invalid_argument("run_motivating: config is not the motivating scenario");
  const LibraryModel model = scenario_model(cfg);
  const double H = cfg.file_entropy;
  for (double m : cfg.memory_grid) {
    if (std::abs(m - H) > 1e-9)
      throw std::invalid_argument("motivating scenario is defined at memory H(W) only");
  }
  const CacheConfig cache = deterministic_place(NamedPlacement::MotivatingExample, H, model);
  const std::vector<bool> flags = {true, true};
  const DemandConfig demand = build_demand(model, cache, {1, 2}, flags);
  if (!cfg.dump_graph_dir.empty()) dump_instance_graphs(cfg, model, cache, demand, "motivating");

  std::vector<double> rates(cfg.schemes.size());
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    rates[si] = evaluate_scheme(cfg.schemes[si], model, cache, demand, cfg.oracle_limit);
  }
  check_trial_order(cfg, rates);

  RateCurve rows;
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    RateRow row;
    row.memory = H;
    row.scheme = cfg.schemes[si];
    row.mean_rate = rates[si];
    row.stderr_rate = 0.0;
    rows.push_back(row);
  }
  sort_rows(rows);
  return rows;
}

RateCurve run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::StaticSymmetric: return run_static(cfg);
    case Scenario::Dynamic: return run_dynamic(cfg);
    case Scenario::TwoFile: return run_two_file(cfg);
    case Scenario::MotivatingExample: return run_motivating(cfg);
  }
  throw std::logic_error("unreachable scenario");
}

void attach_bounds(const ExperimentConfig& cfg, RateCurve& curve) {
  const double H = cfg.file_entropy;
  for (RateRow& row : curve) {
    const double m_files = row.memory / H;
    switch (cfg.scenario) {
      case Scenario::StaticSymmetric: {
        StaticBoundParams p;
        p.K = cfg.n_receivers;
        p.N = cfg.n_files;
        p.M = m_files;
        p.delta = cfg.delta;
        p.cluster_size = cfg.cluster_size;
        row.bound1 = static_rate_bound(p);
        row.bound2 = expected_distinct(cfg.n_receivers, cfg.n_files);
        break;
      }
      case Scenario::Dynamic: {
        DynamicBoundParams p;
        p.K = cfg.n_receivers;
        p.N = cfg.n_files;
        p.M = m_files;
        p.delta = cfg.delta;
        p.pi = cfg.update_prob;
        row.bound1 = dynamic_rate_bound(p);
        row.bound2 = expected_distinct(cfg.n_receivers, cfg.n_files);
        break;
      }
      case Scenario::TwoFile: {
        row.bound1 = two_file_rate(row.memory, cfg.delta, H);
        row.bound2 = expected_distinct(2, 2);
        row.lower_bound = two_file_lower_bound(row.memory, cfg.delta, H);
        break;
      }
      case Scenario::MotivatingExample:
        // Worst-case deterministic instance: the random-placement averages do
        // not apply, so no analytic columns are attached.
        break;
    }
  }
}

void emit_csv(const RateCurve& curve, std::ostream& out) {
  if (curve.empty()) throw std::invalid_argument("emit_csv: empty curve");
  out << "M,scheme,mean_rate,stderr,bound1,bound2,lower_bound\n";
  for (const RateRow& row : curve) {
    out << format_sig(row.memory) << ',' << scheme_name(row.scheme) << ','
        << format_sig(row.mean_rate) << ',' << format_sig(row.stderr_rate) << ','
        << (row.bound1 ? format_sig(*row.bound1) : std::string()) << ','
        << (row.bound2 ? format_sig(*row.bound2) : std::string()) << ','
        << (row.lower_bound ? format_sig(*row.lower_bound) : std::string()) << '\n';
  }
}

void emit_csv_file(const RateCurve& curve, const std::string& path) {
  std::ostringstream buffer;
  emit_csv(curve, buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << buffer.str();
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void emit_bounds_csv(const ExperimentConfig& cfg, std::ostream& out) {
  const double H = cfg.file_entropy;
  out << "M,coded,representative,envelope,multicast,two_file_rate,two_file_lower\n";
  for (double memory : cfg.memory_grid) {
    const double m_files = memory / H;
    std::string coded, representative, envelope, tf_rate, tf_lower;
    const std::string multicast = format_sig(expected_distinct(cfg.n_receivers, cfg.n_files));
    switch (cfg.scenario) {
      case Scenario::StaticSymmetric: {
        StaticBoundParams p;
        p.K = cfg.n_receivers;
        p.N = cfg.n_files;
        p.M = m_files;
        p.delta = cfg.delta;
        p.cluster_size = cfg.cluster_size;
        coded = format_sig(static_coded_bound(p));
        representative = format_sig(static_naive_bound(p));
        envelope = format_sig(static_rate_bound(p));
        break;
      }
      case Scenario::Dynamic:
      case Scenario::MotivatingExample: {
        DynamicBoundParams p;
        p.K = cfg.n_receivers;
        p.N = cfg.n_files;
        p.M = m_files;
        p.delta = cfg.delta;
        p.pi = (cfg.scenario == Scenario::MotivatingExample) ? 1.0 : cfg.update_prob;
        coded = format_sig(dynamic_coded_bound(p));
        envelope = format_sig(dynamic_rate_bound(p));
        break;
      }
      case Scenario::TwoFile: {
        tf_rate = format_sig(two_file_rate(memory, cfg.delta, H));
        tf_lower = format_sig(two_file_lower_bound(memory, cfg.delta, H));
        break;
      }
    }
    out << format_sig(memory) << ',' << coded << ',' << representative << ',' << envelope << ','
        << multicast << ',' << tf_rate << ',' << tf_lower << '\n';
  }
}

int selftest(std::ostream& out) {
  int failures = 0;
  const auto report = [&](bool ok, const std::string& what) {
    out << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  // Two-receiver update example: correlation-aware optimum 1.5, any
  // correlation-ignorant delivery 2.0.
  {
    const ExampleInstance ex = two_receiver_update_example(0.5);
    const DemandConfig demand = ex.demand();
    const ConflictGraph aware = build_augmented_graph(ex.model, ex.cache, demand, true);
    const SchemeResult best = exhaustive_min_rate(aware, ex.model, ex.cache, 10);
    report(best.rate == 1.5 && decode_verify(best.codeword, ex.cache, demand, ex.model),
           "two-receiver update example: aware optimum 1.5");
    const ConflictGraph conventional = build_augmented_graph(ex.model, ex.cache, demand, false);
    const SchemeResult greedy = ggc_best(conventional, ex.model, ex.cache);
    report(greedy.rate == 2.0 && decode_verify(greedy.codeword, ex.cache, demand, ex.model),
           "two-receiver update example: ignorant delivery 2.0");
  }

  // Three-receiver mixed example at delta = 1/4: the coded greedy emits the
  // two known XORs and totals 1/2 + (3/2) delta; the conventional optimum
  // needs 7 packet slots.
  {
    const double delta = 0.25;
    const ExampleInstance ex = three_receiver_mixed_example(delta);
    const DemandConfig demand = ex.demand();
    const ConflictGraph aware = build_augmented_graph(ex.model, ex.cache, demand, true);
    const GroupColoring coloring = ggc_coded(aware, ex.model, ex.cache);
    const Codeword codeword = assemble_codeword(aware, coloring, ex.cache, ex.model);
    const double expected_rate = 0.5 + 1.5 * delta;
    report(rate(codeword, ex.model) == expected_rate &&
               decode_verify(codeword, ex.cache, demand, ex.model),
           "three-receiver mixed example: coded greedy rate 1/2 + (3/2) delta");
    const ConflictGraph conventional = build_augmented_graph(ex.model, ex.cache, demand, false);
    const SchemeResult best = exhaustive_min_rate(conventional, ex.model, ex.cache, 10);
    report(best.rate == 1.75, "three-receiver mixed example: conventional optimum 7/4");
  }

  // Two-file corners at delta = 1/4 (average over the four demands).
  {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::TwoFile;
    cfg.n_receivers = 2;
    cfg.n_files = 2;
    cfg.n_packets = 2;
    cfg.cluster_size = 2;
    cfg.delta = 0.25;
    cfg.memory_grid = {0.0, 1.0, 2.0};
    cfg.schemes = {Scheme::Oracle};
    cfg.trials = 1;
    const RateCurve curve = run_two_file(cfg);
    report(curve.size() == 3 && curve[0].mean_rate == 1.125 && curve[1].mean_rate == 0.25 &&
               curve[2].mean_rate == 0.0,
           "two-file corners at delta 1/4: 1.125 / 0.25 / 0");
  }

  return failures;
}

}  // namespace cacm
