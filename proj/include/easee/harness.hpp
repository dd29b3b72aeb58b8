#pragma once

// Experiment orchestration: sweeps over priors, depths and seeds, matched
// uniform baselines, CSV reports and across-seed summaries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace easee {

enum class ExperimentKind { PureExplorationRatio, PureExplorationCounts, QLearnCurve };

ExperimentKind parse_experiment_kind(const std::string& name);  // throws ValidationError
std::string to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PureExplorationRatio;
  std::string env = "cardinal";
  std::vector<std::string> variants{"1"};  // built-in prior names
  std::vector<std::size_t> depths{6};
  std::size_t episodes = 100;
  std::size_t horizon = 100;  // pure exploration; also the step cap for qlearn on grids
  std::vector<std::uint64_t> seeds{0};
  std::size_t threads = 1;
  // qlearn only
  bool fixed_reset = false;
  std::size_t curve_bin = 100;  // episodes averaged into one curve point
  // When set, rows are appended here as each seed finishes and the file is
  // rewritten in canonical order at the end.
  std::string out_csv;

  void validate() const;
};

struct ReportRow {
  std::string env;
  std::string omega_variant;  // "uniform" for baseline rows
  std::size_t depth = 0;
  std::optional<std::uint64_t> seed;      // empty for per-graph rows
  std::optional<std::size_t> episode;     // curve position, if any
  std::string metric;  // unique_states, ratio_vs_uniform, mean_return, objective_value, node_count
  double value = 0.0;
};

using Report = std::vector<ReportRow>;

// Rows are ordered by (variant, depth) in config order, then graph rows,
// then seeds in config order. Uniform baseline rows appear once per
// (depth, seed), with the first prior. The content depends only on the config.
Report run_experiment(const ExperimentConfig& config);

std::string report_to_csv(const Report& report);
Report report_from_csv(const std::string& text);  // throws ValidationError

struct SummaryRow {
  std::string env;
  std::string omega_variant;
  std::size_t depth = 0;
  std::optional<std::size_t> episode;
  std::string metric;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 when n = 1
  bool ci_defined = false;  // false for a single seed
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Groups rows by (env, variant, depth, episode, metric); normal 95% interval
// mean +- 1.96 sd / sqrt(n). Throws EmptyReport.
std::vector<SummaryRow> summarize(const Report& report);
std::string summary_to_csv(const std::vector<SummaryRow>& summary);

}  // namespace easee
