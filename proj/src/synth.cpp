#include "multicg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "json.hpp"
#include "multicg/error.hpp"
#include "multicg/eval.hpp"

namespace multicg {

namespace {

std::vector<std::string> entity_names(std::size_t n) {
  // E001, E002, ... keeps lexicographic order equal to index order.
  std::vector<std::string> out;
  char buf[24];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "E%03zu", i + 1);
    out.emplace_back(buf);
  }
  return out;
}

Eigen::MatrixXd planted_truth(std::size_t n, std::size_t rank,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> norm_dist(0.3, 0.95);
  Eigen::MatrixXd F(n, rank);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < rank; ++r) F(i, r) = normal(rng);
    F.row(i) *= norm_dist(rng) / F.row(i).norm();
  }
  Eigen::MatrixXd c = F * F.transpose();
  c.diagonal().setOnes();
  return c;
}

std::vector<Eigen::MatrixXd> draw_reliability(std::size_t n,
                                              const NoiseConfig& cfg,
                                              std::mt19937_64& rng) {
  const auto m = cfg.views;
  std::vector<Eigen::MatrixXd> rel(m, Eigen::MatrixXd::Ones(n, n));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> high(0.5, 1.0);
  std::uniform_real_distribution<double> low(0.0, 0.5);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      std::vector<double> r(m);
      switch (cfg.pattern) {
        case ReliabilityPattern::kUniform:
          std::fill(r.begin(), r.end(), cfg.uniform_level);
          break;
        case ReliabilityPattern::kPerPairRandom: {
          for (auto& v : r) v = unit(rng);
          auto best = pick(rng);
          r[best] = std::max(r[best], high(rng));
          break;
        }
        case ReliabilityPattern::kBlockwise: {
          const auto owner = (p % m + q % m) % m;
          for (std::size_t i = 0; i < m; ++i) {
            r[i] = i == owner ? high(rng) : low(rng);
          }
          break;
        }
      }
      for (std::size_t i = 0; i < m; ++i) rel[i](p, q) = rel[i](q, p) = r[i];
    }
  }
  return rel;
}

}  // namespace

std::string_view to_string(ReliabilityPattern p) {
  switch (p) {
    case ReliabilityPattern::kUniform: return "uniform";
    case ReliabilityPattern::kPerPairRandom: return "per-pair-random";
    case ReliabilityPattern::kBlockwise: return "blockwise";
  }
  return "uniform";
}

std::optional<ReliabilityPattern> parse_pattern(std::string_view s) {
  if (s == "uniform") return ReliabilityPattern::kUniform;
  if (s == "per-pair-random") return ReliabilityPattern::kPerPairRandom;
  if (s == "blockwise") return ReliabilityPattern::kBlockwise;
  return std::nullopt;
}

PlantedScenario generate_planted(std::size_t n, const NoiseConfig& cfg,
                                 std::uint64_t seed) {
  if (n < 3) throw InputError("planted scenario needs n >= 3");
  if (cfg.views < 2) throw InputError("planted scenario needs m >= 2 views");
  if (cfg.factor_rank < 1) throw InputError("factor rank must be >= 1");
  if (!(cfg.noise_scale >= 0.0)) throw InputError("noise scale must be >= 0");
  if (cfg.pattern == ReliabilityPattern::kUniform &&
      !(cfg.uniform_level >= 0.0 && cfg.uniform_level <= 1.0)) {
    throw InputError("uniform reliability level must be in [0, 1]");
  }

  std::mt19937_64 rng(seed);
  const auto order = entity_names(n);
  Eigen::MatrixXd truth = planted_truth(n, cfg.factor_rank, rng);
  auto rel = draw_reliability(n, cfg, rng);

  std::normal_distribution<double> normal;
  std::vector<CorrelationMatrix> views;
  for (std::size_t i = 0; i < cfg.views; ++i) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double noise = cfg.noise_scale * normal(rng);
        const double r = rel[i](p, q);
        const double x = r * truth(p, q) + (1.0 - r) * noise;
        v(p, q) = v(q, p) = std::clamp(x, -1.0, 1.0);
      }
    }
    views.push_back({FactorId::named("view" + std::to_string(i + 1)), order,
                     std::move(v), ValueDomain::kPearson, 0});
  }
  return {{FactorId::named("truth"), order, std::move(truth),
           ValueDomain::kPearson, 0},
          GraphSet(std::move(views)),
          std::move(rel),
          seed,
          cfg};
}

double score_recovery(const PlantedScenario& scenario,
                      const CorrelationMatrix& candidate, std::size_t k) {
  return avg_dcg(candidate, scenario.truth, k).avg_dcg;
}

void dump_scenario(const PlantedScenario& scenario,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_matrix_csv(scenario.truth, dir / "truth.csv");
  for (std::size_t i = 0; i < scenario.views.size(); ++i) {
    const auto tag = std::to_string(i + 1);
    write_matrix_csv(scenario.views[i], dir / ("view_" + tag + ".csv"));
    CorrelationMatrix rel{FactorId::named("reliability" + tag),
                          scenario.truth.order, scenario.reliability[i],
                          ValueDomain::kFree, 0};
    write_matrix_csv(rel, dir / ("reliability_" + tag + ".csv"));
  }
  nlohmann::ordered_json manifest;
  manifest["seed"] = scenario.seed;
  manifest["n"] = scenario.truth.size();
  manifest["views"] = scenario.config.views;
  manifest["noise_scale"] = scenario.config.noise_scale;
  manifest["pattern"] = std::string(to_string(scenario.config.pattern));
  manifest["factor_rank"] = scenario.config.factor_rank;
  manifest["uniform_level"] = scenario.config.uniform_level;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw InputError("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(1) << '\n';
}

PlantedScenario load_scenario(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InputError("no manifest.json in " + dir.string());
  auto manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded()) throw InputError("malformed scenario manifest");
  NoiseConfig cfg;
  std::uint64_t seed = 0;
  try {
    seed = manifest.at("seed").get<std::uint64_t>();
    cfg.views = manifest.at("views").get<std::size_t>();
    cfg.noise_scale = manifest.at("noise_scale").get<double>();
    cfg.factor_rank = manifest.at("factor_rank").get<std::size_t>();
    cfg.uniform_level = manifest.at("uniform_level").get<double>();
    auto pattern = parse_pattern(manifest.at("pattern").get<std::string>());
    if (!pattern) throw InputError("unknown reliability pattern");
    cfg.pattern = *pattern;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("scenario manifest: ") + e.what());
  }
  auto truth = read_matrix_csv(dir / "truth.csv", FactorId::named("truth"));
  truth.domain = ValueDomain::kPearson;
  std::vector<CorrelationMatrix> views;
  std::vector<Eigen::MatrixXd> rel;
  for (std::size_t i = 0; i < cfg.views; ++i) {
    const auto tag = std::to_string(i + 1);
    auto v = read_matrix_csv(dir / ("view_" + tag + ".csv"),
                             FactorId::named("view" + tag));
    v.domain = ValueDomain::kPearson;
    views.push_back(std::move(v));
    rel.push_back(read_matrix_csv(dir / ("reliability_" + tag + ".csv"),
                                  FactorId::named("reliability" + tag))
                      .values);
  }
  return {std::move(truth), GraphSet(std::move(views)), std::move(rel), seed,
          cfg};
}

RecoverySummary compare_recovery(std::size_t n, const NoiseConfig& noise,
                                 const SolverConfig& solver,
                                 const std::vector<std::uint64_t>& seeds,
                                 std::size_t k) {
  RecoverySummary summary;
  double gap = 0.0;
  for (auto seed : seeds) {
    auto scenario = generate_planted(n, noise, seed);
    auto result = solve_multicg(scenario.views, solver);
    SeedOutcome outcome;
    outcome.seed = seed;
    outcome.multicg = score_recovery(
        scenario, consensus_matrix(scenario.views, result), k);
    outcome.simple_average =
        score_recovery(scenario, simple_average(scenario.views), k);
    outcome.iterations = result.iterations;
    outcome.converged = result.converged;
    if (outcome.multicg > outcome.simple_average) ++summary.wins;
    if (outcome.multicg == outcome.simple_average) ++summary.ties;
    gap += outcome.multicg - outcome.simple_average;
    summary.seeds.push_back(outcome);
  }
  if (!seeds.empty()) {
    const auto count = static_cast<double>(seeds.size());
    summary.win_rate = static_cast<double>(summary.wins) / count;
    summary.at_least_rate =
        static_cast<double>(summary.wins + summary.ties) / count;
    summary.mean_gap = gap / count;
  }
  return summary;
}

}  // namespace multicg
