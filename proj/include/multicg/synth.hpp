#ifndef MULTICG_SYNTH_HPP_
#define MULTICG_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multicg/consensus.hpp"
#include "multicg/matrix.hpp"

namespace multicg {

enum class ReliabilityPattern {
  kUniform,        // every view and pair at `uniform_level`
  kPerPairRandom,  // U(0,1) per view and pair, one view lifted to >= 0.5
  kBlockwise,      // one view per pair block drawn from U(0.5,1), rest U(0,0.5)
};

std::string_view to_string(ReliabilityPattern p);
std::optional<ReliabilityPattern> parse_pattern(std::string_view s);

struct NoiseConfig {
  double noise_scale = 0.5;  // std of the Gaussian noise entries
  ReliabilityPattern pattern = ReliabilityPattern::kPerPairRandom;
  std::size_t views = 6;
  std::size_t factor_rank = 3;
  double uniform_level = 1.0;
};

/// A planted truth C* with m corrupted views:
///   view_i(p,q) = rel_i(p,q) C*(p,q) + (1 - rel_i(p,q)) noise_i(p,q)
/// symmetrized, clamped to [-1, 1], unit diagonal.
struct PlantedScenario {
  CorrelationMatrix truth;
  GraphSet views;
  std::vector<Eigen::MatrixXd> reliability;
  std::uint64_t seed = 0;
  NoiseConfig config;
};

/// Truth is a random factor correlation matrix F F^T with unit diagonal,
/// F of rank `factor_rank` with row norms in [0.3, 0.95]. Deterministic in
/// the seed. Requires n >= 3 and m >= 2.
PlantedScenario generate_planted(std::size_t n, const NoiseConfig& cfg,
                                 std::uint64_t seed);

/// avgDCG@k of the candidate against the planted truth.
double score_recovery(const PlantedScenario& scenario,
                      const CorrelationMatrix& candidate, std::size_t k);

/// truth.csv, view_<i>.csv, reliability_<i>.csv and manifest.json.
void dump_scenario(const PlantedScenario& scenario,
                   const std::filesystem::path& dir);
PlantedScenario load_scenario(const std::filesystem::path& dir);

struct SeedOutcome {
  std::uint64_t seed = 0;
  double multicg = 0.0;
  double simple_average = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct RecoverySummary {
  std::vector<SeedOutcome> seeds;
  std::size_t wins = 0;    // multi-CG strictly above SA
  std::size_t ties = 0;
  double win_rate = 0.0;   // wins / seeds
  double at_least_rate = 0.0;  // (wins + ties) / seeds
  double mean_gap = 0.0;   // mean(multi-CG - SA)
};

/// Runs multi-CG and uniform-weight SA on one planted scenario per seed and
/// scores both against the planted truth at k.
RecoverySummary compare_recovery(std::size_t n, const NoiseConfig& noise,
                                 const SolverConfig& solver,
                                 const std::vector<std::uint64_t>& seeds,
                                 std::size_t k);

}  // namespace multicg

#endif  // MULTICG_SYNTH_HPP_
