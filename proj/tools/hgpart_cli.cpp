// Command-line front end: partition, evaluate, improve and sweep.
// Exit status: 0 feasible result, 2 infeasible result, 1 error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgpart/hgpart.h"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

using Clock = std::chrono::steady_clock;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(hgp_status status) {
  if (status != HGP_OK) {
    throw CliError(std::string(hgp_status_name(status)) + ": " + hgp_last_error());
  }
}

struct HypergraphDeleter {
  void operator()(hgp_hypergraph* h) const { hgp_hypergraph_destroy(h); }
};
struct ConfigDeleter {
  void operator()(hgp_config* c) const { hgp_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(hgp_result* r) const { hgp_result_destroy(r); }
};
using HypergraphPtr = std::unique_ptr<hgp_hypergraph, HypergraphDeleter>;
using ConfigPtr = std::unique_ptr<hgp_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<hgp_result, ResultDeleter>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

HypergraphPtr load_hypergraph(const std::string& path) {
  hgp_hypergraph* raw = nullptr;
  check(hgp_hypergraph_read(path.c_str(), &raw));
  return HypergraphPtr(raw);
}

std::vector<int32_t> load_partition(const std::string& path, const hgp_hypergraph* h, int32_t k) {
  std::vector<int32_t> assignment(hgp_hypergraph_num_vertices(h));
  check(hgp_read_partition(path.c_str(), h, k, assignment.data(), assignment.size()));
  return assignment;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw CliError("failed writing " + path);
}

struct RunFlags {
  std::string input;
  int32_t k = 2;
  std::optional<double> epsilon;
  std::optional<double> ubfactor;
  std::optional<int32_t> num_init;
  int32_t threads = 0;
  bool deterministic = false;
  std::vector<double> lambda1, lambda2, xi1, xi2;
  std::vector<std::string> p;
  std::optional<double> tau;
  std::optional<int32_t> apg_max_iters;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--input", f.input, "hMetis .hgr file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--k", f.k, "number of blocks")->required()->check(CLI::PositiveNumber);
  auto* eps = cmd->add_option("--epsilon", f.epsilon, "balance factor");
  auto* ub = cmd->add_option("--ubfactor", f.ubfactor, "hMetis UBfactor, converted to epsilon");
  eps->excludes(ub);
  cmd->add_option("--num-init", f.num_init, "number of initial candidates");
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  cmd->add_flag("--deterministic", f.deterministic, "single-threaded reproducible run");
  cmd->add_option("--lambda1", f.lambda1, "lambda1 grid")->delimiter(',');
  cmd->add_option("--lambda2", f.lambda2, "lambda2 grid")->delimiter(',');
  cmd->add_option("--xi1", f.xi1, "xi1 grid")->delimiter(',');
  cmd->add_option("--xi2", f.xi2, "xi2 grid")->delimiter(',');
  cmd->add_option("--p", f.p, "cluster count rules: sqrt(n/2), n/(5k) or an integer")
      ->delimiter(',');
  cmd->add_option("--tau", f.tau, "similarity threshold of the spanning tree");
  cmd->add_option("--apg-max-iters", f.apg_max_iters, "solver iteration cap");
}

void apply_p(hgp_config* config, const std::vector<std::string>& values) {
  std::vector<hgp_p_rule> rules;
  for (const std::string& v : values) {
    if (v == "sqrt(n/2)") {
      rules.push_back(HGP_P_SQRT_HALF_N);
    } else if (v == "n/(5k)") {
      rules.push_back(HGP_P_N_OVER_5K);
    } else {
      std::size_t used = 0;
      unsigned long long p = 0;
      try {
        p = std::stoull(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || p == 0 || values.size() != 1) {
        throw CliError("--p takes the rules sqrt(n/2) and n/(5k), or one positive integer");
      }
      check(hgp_config_set_fixed_p(config, static_cast<size_t>(p)));
      return;
    }
  }
  check(hgp_config_set_fixed_p(config, 0));
  check(hgp_config_set_p_rules(config, rules.data(), rules.size()));
}

ConfigPtr make_config(const RunFlags& f) {
  hgp_config* raw = nullptr;
  check(hgp_config_create(&raw));
  ConfigPtr config(raw);
  check(hgp_config_set_k(raw, f.k));
  if (f.epsilon) check(hgp_config_set_epsilon(raw, *f.epsilon));
  if (f.ubfactor) check(hgp_config_set_ubfactor(raw, *f.ubfactor));
  if (f.num_init) check(hgp_config_set_num_init(raw, *f.num_init));
  check(hgp_config_set_threads(raw, f.threads));
  check(hgp_config_set_deterministic(raw, f.deterministic ? 1 : 0));
  if (!f.lambda1.empty()) check(hgp_config_set_lambda1(raw, f.lambda1.data(), f.lambda1.size()));
  if (!f.lambda2.empty()) check(hgp_config_set_lambda2(raw, f.lambda2.data(), f.lambda2.size()));
  if (!f.xi1.empty()) check(hgp_config_set_xi1(raw, f.xi1.data(), f.xi1.size()));
  if (!f.xi2.empty()) check(hgp_config_set_xi2(raw, f.xi2.data(), f.xi2.size()));
  if (!f.p.empty()) apply_p(raw, f.p);
  if (f.tau) check(hgp_config_set_tau(raw, *f.tau));
  if (f.apg_max_iters) check(hgp_config_set_apg_max_iters(raw, *f.apg_max_iters));
  return config;
}

int status_of(const hgp_result* result) {
  return hgp_result_feasible(result) ? kExitFeasible : kExitInfeasible;
}

int cmd_partition(const RunFlags& flags, const std::string& output,
                  const std::optional<std::string>& metrics_path) {
  const auto io_start = Clock::now();
  HypergraphPtr h = load_hypergraph(flags.input);
  double io_seconds = seconds_since(io_start);

  ConfigPtr config = make_config(flags);
  const auto run_start = Clock::now();
  hgp_result* raw = nullptr;
  check(hgp_partition(h.get(), config.get(), &raw));
  ResultPtr result(raw);
  const double run_seconds = seconds_since(run_start);

  const auto write_start = Clock::now();
  check(hgp_result_write_partition(result.get(), output.c_str()));
  io_seconds += seconds_since(write_start);

  std::string metrics = hgp_result_metrics(result.get());
  metrics += "time_wall_s=" + number(run_seconds) + "\n";
  metrics += "time_io_s=" + number(io_seconds) + "\n";
  if (metrics_path) write_file(*metrics_path, metrics);

  std::cout << "cutsize=" << hgp_result_cutsize(result.get()) << '\n'
            << "feasible=" << (hgp_result_feasible(result.get()) ? "true" : "false") << '\n';
  if (!hgp_result_feasible(result.get())) {
    std::cerr << "warning: no feasible partition found; the best one was written\n";
  }
  return status_of(result.get());
}

int cmd_evaluate(const std::string& input, const std::string& partition, int32_t k,
                 std::optional<double> epsilon, std::optional<double> ubfactor) {
  HypergraphPtr h = load_hypergraph(input);
  const std::vector<int32_t> assignment = load_partition(partition, h.get(), k);
  RunFlags flags;
  flags.k = k;
  flags.epsilon = epsilon;
  flags.ubfactor = ubfactor;
  ConfigPtr config = make_config(flags);
  hgp_result* raw = nullptr;
  check(hgp_evaluate(h.get(), config.get(), assignment.data(), assignment.size(), &raw));
  ResultPtr result(raw);
  std::cout << hgp_result_metrics(result.get());
  return status_of(result.get());
}

int cmd_improve(const RunFlags& flags, const std::string& partition, const std::string& output) {
  HypergraphPtr h = load_hypergraph(flags.input);
  const std::vector<int32_t> assignment = load_partition(partition, h.get(), flags.k);
  ConfigPtr config = make_config(flags);
  hgp_result* raw = nullptr;
  check(hgp_improve(h.get(), config.get(), assignment.data(), assignment.size(), &raw));
  ResultPtr result(raw);
  check(hgp_result_write_partition(result.get(), output.c_str()));
  std::cout << hgp_result_metrics(result.get());
  return status_of(result.get());
}

int cmd_sweep(RunFlags flags, const std::string& axis, const std::vector<std::string>& values,
              const std::optional<std::string>& output) {
  static const std::vector<std::string> kAxes = {"p", "num_init", "lambda1", "lambda2", "xi1", "xi2"};
  if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end()) {
    throw CliError("unknown sweep axis '" + axis + "' (p, num_init, lambda1, lambda2, xi1, xi2)");
  }
  HypergraphPtr h = load_hypergraph(flags.input);
  std::ostringstream csv;
  csv << "axis,value,cutsize,feasible,wall_time_s\n";
  for (const std::string& value : values) {
    RunFlags run = flags;
    try {
      if (axis == "p") {
        run.p = {value};
      } else if (axis == "num_init") {
        run.num_init = std::stoi(value);
      } else {
        const std::vector<double> grid = {std::stod(value)};
        if (axis == "lambda1") run.lambda1 = grid;
        if (axis == "lambda2") run.lambda2 = grid;
        if (axis == "xi1") run.xi1 = grid;
        if (axis == "xi2") run.xi2 = grid;
      }
    } catch (const std::logic_error&) {
      throw CliError("bad value '" + value + "' for axis " + axis);
    }
    ConfigPtr config = make_config(run);
    const auto start = Clock::now();
    hgp_result* raw = nullptr;
    check(hgp_partition(h.get(), config.get(), &raw));
    ResultPtr result(raw);
    const double seconds = seconds_since(start);
    csv << axis << ',' << value << ',' << hgp_result_cutsize(result.get()) << ','
        << (hgp_result_feasible(result.get()) ? "true" : "false") << ',' << number(seconds) << '\n';
  }
  if (output) write_file(*output, csv.str());
  else std::cout << csv.str();
  return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel k-way hypergraph partitioner"};
  app.require_subcommand(1);

  RunFlags partition_flags;
  std::string partition_output;
  std::optional<std::string> partition_metrics;
  auto* partition = app.add_subcommand("partition", "partition a hypergraph");
  add_run_flags(partition, partition_flags);
  partition->add_option("--output", partition_output, "partition file to write")->required();
  partition->add_option("--metrics", partition_metrics, "key=value metrics file to write");

  std::string eval_input, eval_partition;
  int32_t eval_k = 2;
  std::optional<double> eval_epsilon, eval_ubfactor;
  auto* evaluate = app.add_subcommand("evaluate", "report cutsize and balance of a partition");
  evaluate->add_option("--input", eval_input, "hMetis .hgr file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--partition", eval_partition, "partition file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--k", eval_k, "number of blocks")->required()->check(CLI::PositiveNumber);
  auto* eval_eps = evaluate->add_option("--epsilon", eval_epsilon, "balance factor");
  eval_eps->excludes(evaluate->add_option("--ubfactor", eval_ubfactor, "hMetis UBfactor"));

  RunFlags improve_flags;
  std::string improve_partition, improve_output;
  auto* improve = app.add_subcommand("improve", "repair and improve an existing partition");
  add_run_flags(improve, improve_flags);
  improve->add_option("--partition", improve_partition, "partition file")->required()->check(CLI::ExistingFile);
  improve->add_option("--output", improve_output, "improved partition file")->required();

  RunFlags sweep_flags;
  std::string sweep_axis;
  std::vector<std::string> sweep_values;
  std::optional<std::string> sweep_output;
  auto* sweep = app.add_subcommand("sweep", "run partition once per value of one parameter");
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--axis", sweep_axis, "p, num_init, lambda1, lambda2, xi1 or xi2")->required();
  sweep->add_option("--values", sweep_values, "values of the axis")->required()->delimiter(',');
  sweep->add_option("--output", sweep_output, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*partition) return cmd_partition(partition_flags, partition_output, partition_metrics);
    if (*evaluate) return cmd_evaluate(eval_input, eval_partition, eval_k, eval_epsilon, eval_ubfactor);
    if (*improve) return cmd_improve(improve_flags, improve_partition, improve_output);
    if (*sweep) return cmd_sweep(sweep_flags, sweep_axis, sweep_values, sweep_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
