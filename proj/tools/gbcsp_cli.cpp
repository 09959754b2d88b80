// gbcsp command-line front end: instance generation, exhaustive search,
// the unit-clause heuristic, analytic predictions, Monte Carlo sweeps and
// the self-verification suite.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbcsp/analytics.hpp"
#include "gbcsp/backtracker.hpp"
#include "gbcsp/generator.hpp"
#include "gbcsp/harness.hpp"
#include "gbcsp/instance_io.hpp"
#include "gbcsp/oracle.hpp"
#include "gbcsp/uc_solver.hpp"

using nlohmann::ordered_json;

namespace {

struct ParamFlags {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;
  std::int64_t t = 0;
  std::int64_t q = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Number of variables")->required();
    cmd->add_option("--d", d, "Domain size")->required();
    cmd->add_option("--k", k, "Constraint arity")->required();
    cmd->add_option("--t", t, "Number of constraints")->required();
    cmd->add_option("--q", q, "Incompatible tuples per constraint")->required();
  }

  gbcsp::Params params() const { return gbcsp::Params::validate(n, d, k, t, q); }
};

bool use_color() {
  const char* no_color = std::getenv("NO_COLOR");
  return (no_color == nullptr || *no_color == '\0') && isatty(STDOUT_FILENO);
}

std::string status(bool passed) {
  const char* word = passed ? "PASS" : "FAIL";
  if (!use_color()) return word;
  return fmt::format("\x1b[{}m{}\x1b[0m", passed ? 32 : 31, word);
}

bool is_flat(const ordered_json& value) {
  if (!value.is_array()) return !value.is_object();
  return std::all_of(value.begin(), value.end(), [](const auto& v) { return v.is_primitive(); });
}

// Nested containers are indented; arrays of scalars stay on one line.
void render(const ordered_json& value, int depth, std::string& out) {
  if (is_flat(value)) {
    out += value.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const bool object = value.is_object();
  out += object ? "{\n" : "[\n";
  bool first = true;
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (object) out += ordered_json(it.key()).dump() + ": ";
    render(*it, depth + 1, out);
  }
  out += "\n" + std::string(static_cast<std::size_t>(2 * depth), ' ') + (object ? "}" : "]");
}

void print(const ordered_json& doc) {
  std::string out;
  render(doc, 0, out);
  std::cout << out << '\n';
}

ordered_json tuples_json(const std::vector<gbcsp::Tuple>& tuples) {
  ordered_json list = ordered_json::array();
  for (const auto& tuple : tuples) list.push_back(tuple);
  return list;
}

ordered_json log_pair(double natural) {
  return ordered_json{{"ln", natural}, {"log10", natural / std::log(10.0)}};
}

int cmd_generate(const ParamFlags& flags, std::uint64_t seed, std::uint64_t trial,
                 const std::string& out) {
  const auto instance = gbcsp::sample_instance(flags.params(), gbcsp::SeedSpec{seed, trial});
  if (out.empty() || out == "-")
    std::cout << gbcsp::to_text(instance);
  else
    gbcsp::write_instance(out, instance);
  return 0;
}

int cmd_solve(const std::string& in, bool collect, bool profile) {
  const auto instance = gbcsp::read_instance(in);
  const auto stats = gbcsp::solve_all(instance, collect);
  ordered_json doc;
  doc["nodes"] = stats.nodes;
  doc["solution_count"] = stats.solution_count;
  if (profile) doc["levels"] = stats.levels;
  if (collect && stats.solutions) doc["solutions"] = tuples_json(*stats.solutions);
  print(doc);
  return 0;
}

int cmd_uc(const std::string& in, std::uint64_t seed, std::uint64_t trial) {
  const auto instance = gbcsp::read_instance(in);
  const auto outcome = gbcsp::run_uc(instance, gbcsp::SeedSpec{seed, trial});
  ordered_json doc;
  doc["outcome"] = outcome.tag == gbcsp::UCTag::SolutionFound ? "solution-found" : "unknown";
  doc["steps"] = outcome.steps;
  doc["assignment"] = outcome.assignment ? ordered_json(*outcome.assignment) : ordered_json(nullptr);
  print(doc);
  return 0;
}

int cmd_ucrate(const ParamFlags& flags, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const auto params = flags.params();
  const double rate = gbcsp::uc_success_rate(params, trials, seed, threads);
  ordered_json doc;
  doc["n"] = params.n();
  doc["t"] = params.t();
  doc["r"] = params.r();
  doc["trials"] = trials;
  doc["uc_success"] = rate;
  doc["uc_bound"] = gbcsp::analytics::uc_bound(static_cast<double>(params.d()), params.k());
  print(doc);
  return 0;
}

int cmd_predict(const ParamFlags& flags, double tol) {
  namespace an = gbcsp::analytics;
  const auto params = flags.params();
  ordered_json doc;
  doc["n"] = params.n();
  doc["d"] = params.d();
  doc["k"] = params.k();
  doc["t"] = params.t();
  doc["q"] = params.q();
  doc["p"] = params.p();
  doc["r"] = params.r();
  if (params.t() == 0) {
    doc["log_T_exact"] = log_pair(an::log_exact_expected_nodes(params));
    doc["note"] = "no constraints: only the exact expectation is defined";
    print(doc);
    return 0;
  }
  const auto prediction = an::predict(params, tol);
  doc["regime"] = an::to_string(prediction.regime);
  doc["r0"] = prediction.r0;
  doc["r_cr"] = prediction.r_cr;
  doc["uc_bound"] = prediction.uc_bound;
  doc["zeta"] = prediction.zeta;
  doc["F"] = prediction.F;
  doc["log_EN"] = log_pair(prediction.log_EN);
  doc["log_prefactor"] = log_pair(prediction.log_prefactor);
  doc["log_T_exact"] = log_pair(prediction.log_T_exact);
  doc["log_T_asym"] = log_pair(prediction.log_T_asym);
  if (prediction.neighbor_log_T_asym)
    doc["neighbor_log_T_asym"] = log_pair(*prediction.neighbor_log_T_asym);
  if (!prediction.warning.empty()) doc["warning"] = prediction.warning;
  print(doc);
  return 0;
}

struct SweepFlags {
  std::string config;
  std::optional<std::int64_t> n, d, k, q;
  std::vector<std::int64_t> t_grid;
  std::vector<double> r_grid;
  std::optional<std::uint64_t> trials, seed;
  std::optional<unsigned> threads;
  std::string out;
  std::string plot;
  std::string measure;
};

int cmd_sweep(const SweepFlags& flags) {
  namespace h = gbcsp::harness;
  h::ExperimentConfig config;
  if (!flags.config.empty()) config = h::ExperimentConfig::load(flags.config);
  if (flags.n) config.n = *flags.n;
  if (flags.d) config.d = *flags.d;
  if (flags.k) config.k = *flags.k;
  if (flags.q) config.q = *flags.q;
  if (!flags.t_grid.empty()) config.t_grid = flags.t_grid;
  if (!flags.r_grid.empty()) config.t_grid = h::t_grid_from_r(flags.r_grid, config.n);
  if (flags.trials) config.trials = *flags.trials;
  if (flags.seed) config.master_seed = *flags.seed;
  if (flags.threads) config.threads = *flags.threads;
  if (!flags.measure.empty()) config.measures = h::Measures::parse(flags.measure);
  if (!flags.out.empty()) config.output = flags.out;
  if (config.t_grid.empty()) throw gbcsp::Error(gbcsp::ErrorKind::OutOfRange, "empty t grid");
  if (config.trials < 1) throw gbcsp::Error(gbcsp::ErrorKind::OutOfRange, "trials must be at least 1");

  const auto result = h::run_sweep(config);
  for (const auto& error : result.errors)
    std::cerr << fmt::format("skipped t={}: {}\n", error.t, error.message);
  if (result.rows.empty()) {
    std::cerr << "no valid grid points\n";
    return 1;
  }
  if (config.output.empty() || config.output == "-")
    std::cout << h::format_csv(result.rows);
  else
    h::emit_csv(result.rows, config.output);
  if (!flags.plot.empty()) h::emit_plotdata(result.rows, flags.plot);
  return result.errors.empty() ? 0 : 2;
}

int cmd_verify(std::uint64_t seed, std::uint64_t instances, std::uint64_t samples) {
  const auto results = gbcsp::oracle::run_verification(seed, instances, samples);
  bool all = true;
  for (const auto& check : results) {
    all = all && check.passed;
    std::cout << fmt::format("[{}] {}: {}\n", status(check.passed), check.name, check.detail);
  }
  std::cout << fmt::format("{} of {} checks passed\n",
                           std::count_if(results.begin(), results.end(),
                                         [](const auto& c) { return c.passed; }),
                           results.size());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model GB random CSP workbench"};
  app.require_subcommand(1);

  ParamFlags generate_flags;
  std::uint64_t generate_seed = 0;
  std::uint64_t generate_trial = 0;
  std::string generate_out;
  auto* generate = app.add_subcommand("generate", "Sample one instance");
  generate_flags.attach(generate);
  generate->add_option("--seed", generate_seed, "Master seed");
  generate->add_option("--trial", generate_trial, "Stream index");
  generate->add_option("--out", generate_out, "Output file (default stdout)");

  std::string solve_in;
  bool solve_collect = false;
  bool solve_profile = false;
  auto* solve = app.add_subcommand("solve", "Enumerate all solutions by backtracking");
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_flag("--collect", solve_collect, "List the solutions");
  solve->add_flag("--profile", solve_profile, "Report consistent partial assignments per level");

  std::string uc_in;
  std::uint64_t uc_seed = 0;
  std::uint64_t uc_trial = 0;
  auto* uc = app.add_subcommand("uc", "Run the unit-clause heuristic once");
  uc->add_option("--in", uc_in, "Instance file")->required();
  uc->add_option("--seed", uc_seed, "Master seed");
  uc->add_option("--trial", uc_trial, "Stream index");

  ParamFlags ucrate_flags;
  std::uint64_t ucrate_trials = 100;
  std::uint64_t ucrate_seed = 0;
  unsigned ucrate_threads = 0;
  auto* ucrate = app.add_subcommand("ucrate", "Unit-clause success rate over random instances");
  ucrate_flags.attach(ucrate);
  ucrate->add_option("--trials", ucrate_trials, "Number of instances")->check(CLI::PositiveNumber);
  ucrate->add_option("--seed", ucrate_seed, "Master seed");
  ucrate->add_option("--threads", ucrate_threads, "Worker threads (0 = all)");

  ParamFlags predict_flags;
  double predict_tol = gbcsp::analytics::kDefaultTol;
  auto* predict = app.add_subcommand("predict", "Analytic predictions for one parameter set");
  predict_flags.attach(predict);
  predict->add_option("--tol", predict_tol, "Root-finding tolerance")->check(CLI::PositiveNumber);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over constraint counts");
  sweep->add_option("--config", sweep_flags.config, "JSON experiment config");
  sweep->add_option("--n", sweep_flags.n, "Number of variables");
  sweep->add_option("--d", sweep_flags.d, "Domain size");
  sweep->add_option("--k", sweep_flags.k, "Constraint arity");
  sweep->add_option("--q", sweep_flags.q, "Incompatible tuples per constraint");
  sweep->add_option("--t-grid", sweep_flags.t_grid, "Constraint counts")->delimiter(',');
  sweep->add_option("--r-grid", sweep_flags.r_grid, "Densities, mapped to t = round(r n)")->delimiter(',');
  sweep->add_option("--trials", sweep_flags.trials, "Trials per grid point");
  sweep->add_option("--seed", sweep_flags.seed, "Master seed");
  sweep->add_option("--threads", sweep_flags.threads, "Worker threads (0 = all)");
  sweep->add_option("--measure", sweep_flags.measure, "Comma list from nodes,sat,uc");
  sweep->add_option("--out", sweep_flags.out, "CSV output file (default stdout)");
  sweep->add_option("--plot", sweep_flags.plot, "Plot-data output file");

  std::uint64_t verify_seed = 0;
  std::uint64_t verify_instances = 200;
  std::uint64_t verify_samples = 200000;
  auto* verify = app.add_subcommand("verify", "Run the oracle self-checks");
  verify->add_option("--seed", verify_seed, "Master seed");
  verify->add_option("--instances", verify_instances, "Random instances checked against brute force");
  verify->add_option("--samples", verify_samples, "Samples per empirical g check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(generate_flags, generate_seed, generate_trial, generate_out);
    if (solve->parsed()) return cmd_solve(solve_in, solve_collect, solve_profile);
    if (uc->parsed()) return cmd_uc(uc_in, uc_seed, uc_trial);
    if (ucrate->parsed()) return cmd_ucrate(ucrate_flags, ucrate_trials, ucrate_seed, ucrate_threads);
    if (predict->parsed()) return cmd_predict(predict_flags, predict_tol);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    if (verify->parsed()) return cmd_verify(verify_seed, verify_instances, verify_samples);
  } catch (const gbcsp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
