#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gbcsp/model.hpp"

namespace gbcsp::harness {

struct Measures {
  bool nodes = true;
  bool sat = false;
  bool uc = false;

  /// Parses a comma-separated list drawn from {nodes, sat, uc}.
  static Measures parse(std::string_view list);
};

struct ExperimentConfig {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> t_grid;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  Measures measures;
  /// 0 uses every hardware thread. Results do not depend on it.
  unsigned threads = 0;
  std::filesystem::path output;

  /// Config document fields: n, d, k, q, t_grid or r_grid, trials, seed,
  /// measure (list or comma string), threads, out.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig load(const std::filesystem::path& path);
};

/// t = round(r * n) for each requested density.
std::vector<std::int64_t> t_grid_from_r(const std::vector<double>& r_grid, std::int64_t n);

/// Per-trial observations, indexed by trial number.
struct TrialRecord {
  std::uint64_t nodes = 0;
  std::optional<bool> satisfiable;
  std::optional<bool> uc_success;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Seed of a grid point's trial streams; trial i uses stream index i.
std::uint64_t point_seed(std::uint64_t master_seed, std::int64_t t);

/// Trials [first, first + count) of one grid point. Trial i draws its
/// instance and heuristic randomness from SeedSpec{point_seed, i} only, so
/// any partition of the trial range yields the same records.
std::vector<TrialRecord> run_trials(const Params& params, const Measures& measures,
                                    std::uint64_t master_seed, std::uint64_t first,
                                    std::uint64_t count, unsigned threads = 0);

struct SummaryRow {
  std::int64_t t = 0;
  double r = 0.0;
  std::uint64_t trials = 0;
  std::optional<double> mean_nodes;
  std::optional<double> stderr_nodes;
  std::optional<double> sat_fraction;
  std::optional<double> uc_success;
  std::optional<double> log_T_exact;
  std::optional<double> log_T_asym;
  /// (mean_nodes - exp(log_T_exact)) / stderr_nodes.
  std::optional<double> z_score;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Aggregates trial records in index order and attaches predictions.
SummaryRow summarize(const Params& params, const std::vector<TrialRecord>& records,
                     const Measures& measures);

struct PointError {
  std::int64_t t = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SummaryRow> rows;
  std::vector<PointError> errors;
};

/// One row per valid grid point; invalid or non-strict points are reported
/// in errors and skipped.
SweepResult run_sweep(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "t,r,trials,mean_nodes,stderr_nodes,sat_fraction,uc_success,log_T_exact,log_T_asym,z_score";

/// CSV with kCsvHeader; absent measures are empty fields.
std::string format_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_csv(std::string_view text);
void emit_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

/// Whitespace-separated columns under a '#' header line, with ln(mean_nodes)
/// added after stderr_nodes; absent values are written as nan.
std::string format_plotdata(const std::vector<SummaryRow>& rows);
void emit_plotdata(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

}  // namespace gbcsp::harness
