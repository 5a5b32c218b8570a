#ifndef MULTICG_PIPELINE_HPP_
#define MULTICG_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multicg/consensus.hpp"
#include "multicg/date.hpp"
#include "multicg/eval.hpp"
#include "multicg/synth.hpp"

namespace multicg {

inline const std::vector<std::string> kIndicators = {"tv", "cp", "hv"};

/// Effective settings of one run. Every output manifest echoes this.
struct RunConfig {
  std::filesystem::path catalog;
  std::filesystem::path corpus;
  std::filesystem::path market_dir;
  std::optional<Date> start;
  std::optional<Date> end;
  std::vector<int> lags = {-2, -1, 1, 2};
  std::size_t sma = 10;
  std::size_t vol_window = 21;
  // Per-indicator consensus penalty.
  std::map<std::string, double> alpha = {{"tv", 0.25}, {"cp", 0.15},
                                         {"hv", 0.4}};
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  double ridge = 0.0;
  bool normalize_views = false;
  std::vector<std::size_t> ks = {10, 20, 30, 40, 50};
  std::filesystem::path out = "multicg_out";

  std::vector<double> alpha_grid = {0.05, 0.15, 0.25, 0.4, 0.8};

  std::size_t synth_n = 20;
  NoiseConfig noise;
  std::vector<std::uint64_t> seeds = default_seeds();
  double synth_alpha = 0.25;
  std::size_t synth_k = 10;

  static std::vector<std::uint64_t> default_seeds();  // 1..50

  nlohmann::ordered_json to_json() const;
  // Throws InputError on an invalid combination.
  void validate() const;
};

std::filesystem::path graphs_dir(const RunConfig& cfg);
std::filesystem::path consensus_dir(const RunConfig& cfg);
std::filesystem::path eval_dir(const RunConfig& cfg);

/// Factor ids in output order for the configured lag set.
std::vector<FactorId> factor_ids(const std::vector<int>& lags);

struct BuildSummary {
  std::size_t records = 0;
  std::size_t rejected_lines = 0;
  std::size_t dropped_no_mention = 0;
  std::size_t trading_days = 0;
  std::vector<std::filesystem::path> files;
};

/// Writes one matrix file per factor and per ground-truth indicator plus
/// diagnostics.json into <out>/graphs.
BuildSummary cmd_build_graphs(const RunConfig& cfg);

struct SolveSummary {
  std::map<std::string, ConsensusResult> results;  // by indicator
};

/// Solves multi-CG once per indicator penalty and the uniform SA baseline;
/// writes multicg_<ind>.csv/.json, sa.csv and manifest.json into
/// <out>/consensus.
SolveSummary cmd_solve(const RunConfig& cfg);

/// One comparison table per indicator (rows: single factors, SA, multi-CG;
/// columns: k) into <out>/eval.
std::map<std::string, ComparisonTable> cmd_evaluate(const RunConfig& cfg);

struct SweepRow {
  double alpha = 0.0;
  std::string indicator;
  std::size_t k = 0;
  double avg_dcg = 0.0;
};

/// One solve per alpha in the grid, scored against every indicator at every
/// k; writes <out>/sweep/alpha_sweep.csv and summary.json.
std::vector<SweepRow> cmd_sweep_alpha(const RunConfig& cfg);

/// Planted-recovery comparison of multi-CG against SA over the configured
/// seeds; writes <out>/synth/report.csv and summary.json.
RecoverySummary cmd_synth(const RunConfig& cfg);

}  // namespace multicg

#endif  // MULTICG_PIPELINE_HPP_
