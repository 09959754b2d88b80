#include "gbcsp/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gbcsp/analytics.hpp"
#include "gbcsp/backtracker.hpp"
#include "gbcsp/generator.hpp"
#include "gbcsp/parallel.hpp"
#include "gbcsp/rng.hpp"
#include "gbcsp/uc_solver.hpp"

namespace gbcsp::harness {

namespace {

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(separator, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::string_view column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorKind::Parse, fmt::format("bad value '{}' in column {}", field, column));
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::string_view column) {
  if (field.empty()) return std::nullopt;
  return parse_number<double>(field, column);
}

std::string render(const std::optional<double>& value) {
  return value ? fmt::format("{}", *value) : std::string();
}

std::string render_plot(const std::optional<double>& value) {
  return value ? fmt::format("{}", *value) : std::string("nan");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for writing", path.string()));
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace

Measures Measures::parse(std::string_view list) {
  Measures measures{false, false, false};
  for (std::string_view item : split(list, ',')) {
    item = trim(item);
    if (item == "nodes") {
      measures.nodes = true;
    } else if (item == "sat") {
      measures.sat = true;
    } else if (item == "uc") {
      measures.uc = true;
    } else if (!item.empty()) {
      throw Error(ErrorKind::Parse, fmt::format("unknown measure '{}'", item));
    }
  }
  return measures;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig config;
  try {
    config.n = doc.at("n").get<std::int64_t>();
    config.d = doc.at("d").get<std::int64_t>();
    config.k = doc.at("k").get<std::int64_t>();
    config.q = doc.at("q").get<std::int64_t>();
    if (doc.contains("t_grid")) {
      config.t_grid = doc.at("t_grid").get<std::vector<std::int64_t>>();
    } else if (doc.contains("r_grid")) {
      config.t_grid = t_grid_from_r(doc.at("r_grid").get<std::vector<double>>(), config.n);
    }
    if (doc.contains("trials")) config.trials = doc.at("trials").get<std::uint64_t>();
    if (doc.contains("seed")) config.master_seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<unsigned>();
    if (doc.contains("out")) config.output = doc.at("out").get<std::string>();
    if (doc.contains("measure")) {
      const auto& measure = doc.at("measure");
      if (measure.is_string()) {
        config.measures = Measures::parse(measure.get<std::string>());
      } else {
        std::string joined;
        for (const auto& item : measure) joined += item.get<std::string>() + ",";
        config.measures = Measures::parse(joined);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for reading", path.string()));
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::int64_t> t_grid_from_r(const std::vector<double>& r_grid, std::int64_t n) {
  std::vector<std::int64_t> grid;
  grid.reserve(r_grid.size());
  for (double r : r_grid) grid.push_back(std::llround(r * static_cast<double>(n)));
  return grid;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::int64_t t) {
  return mix64(master_seed ^ mix64(static_cast<std::uint64_t>(t) + 0x5851F42D4C957F2DULL));
}

std::vector<TrialRecord> run_trials(const Params& params, const Measures& measures,
                                    std::uint64_t master_seed, std::uint64_t first,
                                    std::uint64_t count, unsigned threads) {
  const std::uint64_t seed = point_seed(master_seed, params.t());
  std::vector<TrialRecord> records(count);
  parallel_for_index(count, threads, [&](std::size_t j) {
    const SeedSpec spec{seed, first + j};
    const Instance instance = sample_instance(params, spec);
    TrialRecord& record = records[j];
    if (measures.nodes || measures.sat) {
      const SearchStats stats = solve_all(instance, false);
      record.nodes = stats.nodes;
      if (measures.sat) record.satisfiable = stats.solution_count > 0;
    }
    if (measures.uc) record.uc_success = run_uc(instance, spec).tag == UCTag::SolutionFound;
  });
  return records;
}

SummaryRow summarize(const Params& params, const std::vector<TrialRecord>& records,
                     const Measures& measures) {
  SummaryRow row;
  row.t = params.t();
  row.r = params.r();
  row.trials = records.size();
  const auto count = static_cast<long double>(records.size());

  if (params.strict()) {
    row.log_T_exact = analytics::log_exact_expected_nodes(params);
    if (params.t() > 0) row.log_T_asym = analytics::prefactor_and_asymptote(params).log_T_asym;
  }

  if (measures.nodes && !records.empty()) {
    long double sum = 0.0L;
    for (const TrialRecord& record : records) sum += static_cast<long double>(record.nodes);
    const long double mean = sum / count;
    long double squares = 0.0L;
    for (const TrialRecord& record : records) {
      const long double diff = static_cast<long double>(record.nodes) - mean;
      squares += diff * diff;
    }
    const long double variance = records.size() > 1 ? squares / (count - 1.0L) : 0.0L;
    row.mean_nodes = static_cast<double>(mean);
    row.stderr_nodes = static_cast<double>(std::sqrt(variance / count));
    if (row.log_T_exact && *row.stderr_nodes > 0.0)
      row.z_score = (*row.mean_nodes - std::exp(*row.log_T_exact)) / *row.stderr_nodes;
  }
  auto fraction = [&](auto member) {
    std::uint64_t hits = 0;
    for (const TrialRecord& record : records)
      if ((record.*member).value_or(false)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(records.size());
  };
  if (measures.sat && !records.empty()) row.sat_fraction = fraction(&TrialRecord::satisfiable);
  if (measures.uc && !records.empty()) row.uc_success = fraction(&TrialRecord::uc_success);
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error(ErrorKind::OutOfRange, "trials must be at least 1");
  SweepResult result;
  for (std::int64_t t : config.t_grid) {
    try {
      const Params params = Params::validate(config.n, config.d, config.k, t, config.q);
      require_strict(params);
      const auto records =
          run_trials(params, config.measures, config.master_seed, 0, config.trials, config.threads);
      result.rows.push_back(summarize(params, records, config.measures));
    } catch (const Error& e) {
      result.errors.push_back(PointError{t, e.what()});
    }
  }
  return result;
}

std::string format_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SummaryRow& row : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", row.t, row.r, row.trials,
                       render(row.mean_nodes), render(row.stderr_nodes), render(row.sat_fraction),
                       render(row.uc_success), render(row.log_T_exact), render(row.log_T_asym),
                       render(row.z_score));
  }
  return out;
}

std::vector<SummaryRow> parse_csv(std::string_view text) {
  std::vector<SummaryRow> rows;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw Error(ErrorKind::Parse, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 10)
      throw Error(ErrorKind::Parse, fmt::format("expected 10 fields, got {}", fields.size()));
    SummaryRow row;
    row.t = parse_number<std::int64_t>(fields[0], "t");
    row.r = parse_number<double>(fields[1], "r");
    row.trials = parse_number<std::uint64_t>(fields[2], "trials");
    row.mean_nodes = parse_optional(fields[3], "mean_nodes");
    row.stderr_nodes = parse_optional(fields[4], "stderr_nodes");
    row.sat_fraction = parse_optional(fields[5], "sat_fraction");
    row.uc_success = parse_optional(fields[6], "uc_success");
    row.log_T_exact = parse_optional(fields[7], "log_T_exact");
    row.log_T_asym = parse_optional(fields[8], "log_T_asym");
    row.z_score = parse_optional(fields[9], "z_score");
    rows.push_back(row);
  }
  if (!header_seen) throw Error(ErrorKind::Parse, "missing CSV header");
  return rows;
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorKind::OutOfRange, "no rows to write");
  write_file(path, format_csv(rows));
}

std::string format_plotdata(const std::vector<SummaryRow>& rows) {
  std::string out =
      "# t r trials mean_nodes stderr_nodes ln_mean_nodes sat_fraction uc_success log_T_exact "
      "log_T_asym z_score\n";
  for (const SummaryRow& row : rows) {
    std::optional<double> ln_mean;
    if (row.mean_nodes && *row.mean_nodes > 0.0) ln_mean = std::log(*row.mean_nodes);
    out += fmt::format("{} {} {} {} {} {} {} {} {} {} {}\n", row.t, row.r, row.trials,
                       render_plot(row.mean_nodes), render_plot(row.stderr_nodes),
                       render_plot(ln_mean), render_plot(row.sat_fraction),
                       render_plot(row.uc_success), render_plot(row.log_T_exact),
                       render_plot(row.log_T_asym), render_plot(row.z_score));
  }
  return out;
}

void emit_plotdata(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorKind::OutOfRange, "no rows to write");
  write_file(path, format_plotdata(rows));
}

}  // namespace gbcsp::harness
