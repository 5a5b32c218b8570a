// multicg: build correlation graphs from a mention corpus, learn the
// consensus matrix and score it against market ground truth.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multicg/error.hpp"
#include "multicg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace multicg;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Flags {
  std::string catalog, corpus, market, start, end, out;
  std::optional<double> alpha, alpha_tv, alpha_cp, alpha_hv;
  std::vector<double> alpha_grid;
  std::vector<std::size_t> ks;
  std::vector<int> lags;
  bool no_lags = false;
  std::optional<std::size_t> sma, max_iter, vol_window;
  std::optional<double> tol, ridge;
  bool normalize = false;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n, views, rank, synth_k;
  std::optional<double> noise, uniform_level;
  std::string pattern;
};

// Relative input paths in a config file are taken relative to that file.
fs::path resolve(const std::string& value, const fs::path& base) {
  fs::path p(value);
  return p.is_relative() && !base.empty() ? base / p : p;
}

RunConfig to_run_config(const Flags& f, const fs::path& config_dir) {
  RunConfig cfg;
  if (!f.catalog.empty()) cfg.catalog = resolve(f.catalog, config_dir);
  if (!f.corpus.empty()) cfg.corpus = resolve(f.corpus, config_dir);
  if (!f.market.empty()) cfg.market_dir = resolve(f.market, config_dir);
  if (!f.start.empty()) cfg.start = Date::parse(f.start);
  if (!f.end.empty()) cfg.end = Date::parse(f.end);
  if (!f.out.empty()) cfg.out = f.out;
  if (f.alpha) {
    for (auto& [ind, a] : cfg.alpha) a = *f.alpha;
  }
  if (f.alpha_tv) cfg.alpha["tv"] = *f.alpha_tv;
  if (f.alpha_cp) cfg.alpha["cp"] = *f.alpha_cp;
  if (f.alpha_hv) cfg.alpha["hv"] = *f.alpha_hv;
  if (!f.alpha_grid.empty()) cfg.alpha_grid = f.alpha_grid;
  if (!f.ks.empty()) cfg.ks = f.ks;
  if (!f.lags.empty()) cfg.lags = f.lags;
  if (f.no_lags) cfg.lags.clear();
  if (f.sma) cfg.sma = *f.sma;
  if (f.vol_window) cfg.vol_window = *f.vol_window;
  if (f.max_iter) cfg.max_iter = *f.max_iter;
  if (f.tol) cfg.tol = *f.tol;
  if (f.ridge) cfg.ridge = *f.ridge;
  cfg.normalize_views = f.normalize;
  if (!f.seeds.empty()) cfg.seeds = f.seeds;
  if (f.seed) cfg.seeds = {*f.seed};
  if (f.n) cfg.synth_n = *f.n;
  if (f.views) cfg.noise.views = *f.views;
  if (f.rank) cfg.noise.factor_rank = *f.rank;
  if (f.synth_k) cfg.synth_k = *f.synth_k;
  if (f.noise) cfg.noise.noise_scale = *f.noise;
  if (f.uniform_level) cfg.noise.uniform_level = *f.uniform_level;
  if (f.alpha) cfg.synth_alpha = *f.alpha;
  if (!f.pattern.empty()) {
    auto p = parse_pattern(f.pattern);
    if (!p) throw InputError("unknown reliability pattern '" + f.pattern + "'");
    cfg.noise.pattern = *p;
  }
  return cfg;
}

void print_table(const std::string& indicator, const ComparisonTable& t) {
  std::cout << "[" << indicator << "]\n";
  write_comparison_csv(t, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus correlation graphs from social-media mentions"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* config_opt = app.set_config("--config", "", "Run config file (TOML/INI)");

  Flags f;
  app.add_option("--catalog", f.catalog, "Entity catalog (symbol,name,industry)");
  app.add_option("--corpus", f.corpus, "Mention corpus, one JSON object per line");
  app.add_option("--market", f.market, "Directory of <SYMBOL>.csv market files");
  app.add_option("--start", f.start, "Window start, YYYY-MM-DD");
  app.add_option("--end", f.end, "Window end (inclusive), YYYY-MM-DD");
  app.add_option("--out", f.out, "Run output directory");
  app.add_option("--alpha", f.alpha, "Penalty for every indicator (and synth)");
  app.add_option("--alpha-tv", f.alpha_tv, "Penalty for trading volume");
  app.add_option("--alpha-cp", f.alpha_cp, "Penalty for closing price");
  app.add_option("--alpha-hv", f.alpha_hv, "Penalty for historical volatility");
  app.add_option("--alphas", f.alpha_grid, "Alpha grid for sweep-alpha")
      ->delimiter(',');
  app.add_option("--k", f.ks, "Top-k cut-offs")->delimiter(',');
  app.add_option("--lags", f.lags, "Lag set, e.g. --lags=-2,-1,1,2")
      ->delimiter(',');
  app.add_flag("--no-lags", f.no_lags, "Use no lagged factors");
  app.add_option("--sma", f.sma, "SMA window length");
  app.add_option("--vol-window", f.vol_window, "Volatility window (trading days)");
  app.add_option("--tol", f.tol, "Relative objective tolerance");
  app.add_option("--max-iter", f.max_iter, "Maximum solver sweeps");
  app.add_option("--ridge", f.ridge, "Ridge added in the M-step");
  app.add_flag("--normalize-views", f.normalize, "z-normalize each view");
  app.add_option("--seeds", f.seeds, "Synth seeds")->delimiter(',');
  app.add_option("--seed", f.seed, "Single synth seed");
  app.add_option("--n", f.n, "Synth entity count");
  app.add_option("--views", f.views, "Synth view count");
  app.add_option("--rank", f.rank, "Synth truth factor rank");
  app.add_option("--synth-k", f.synth_k, "Synth top-k");
  app.add_option("--noise", f.noise, "Synth noise scale");
  app.add_option("--uniform-level", f.uniform_level,
                 "Reliability for the uniform pattern");
  app.add_option("--pattern", f.pattern,
                 "uniform | per-pair-random | blockwise");

  auto* build = app.add_subcommand("build-graphs", "Write factor and ground-truth matrices");
  auto* solve = app.add_subcommand("solve", "Learn multi-CG consensus and SA baseline");
  auto* evaluate = app.add_subcommand("evaluate", "avgDCG comparison tables");
  auto* sweep = app.add_subcommand("sweep-alpha", "avgDCG across an alpha grid");
  auto* synth = app.add_subcommand("synth", "Planted-recovery comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  std::string stage = "multicg";
  for (auto* sub : {build, solve, evaluate, sweep, synth}) {
    if (sub->parsed()) stage = sub->get_name();
  }

  try {
    fs::path config_dir;
    if (config_opt->count() > 0) {
      config_dir = fs::path(config_opt->as<std::string>()).parent_path();
    }
    const RunConfig cfg = to_run_config(f, config_dir);

    if (build->parsed()) {
      auto s = cmd_build_graphs(cfg);
      std::cout << "records " << s.records << ", rejected " << s.rejected_lines
                << ", dropped " << s.dropped_no_mention << ", trading days "
                << s.trading_days << "\n";
      for (const auto& p : s.files) std::cout << p.generic_string() << "\n";
    } else if (solve->parsed()) {
      auto s = cmd_solve(cfg);
      for (const auto& [ind, r] : s.results) {
        std::cout << "multicg_" << ind << ": alpha " << cfg.alpha.at(ind)
                  << ", iterations " << r.iterations << ", converged "
                  << (r.converged ? "yes" : "no") << ", objective "
                  << r.objective_trace.back() << "\n";
      }
    } else if (evaluate->parsed()) {
      for (const auto& [ind, t] : cmd_evaluate(cfg)) print_table(ind, t);
    } else if (sweep->parsed()) {
      auto rows = cmd_sweep_alpha(cfg);
      std::cout << "alpha,indicator,k,avg_dcg\n";
      for (const auto& r : rows) {
        std::cout << r.alpha << ',' << r.indicator << ',' << r.k << ','
                  << r.avg_dcg << "\n";
      }
    } else if (synth->parsed()) {
      auto s = cmd_synth(cfg);
      std::cout << "seeds " << s.seeds.size() << ", wins " << s.wins
                << ", ties " << s.ties << ", win rate " << s.win_rate
                << ", mean gap " << s.mean_gap << "\n";
    }
  } catch (const NumericalError& e) {
    std::cerr << stage << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    std::cerr << stage << ": input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << stage << ": input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << stage << ": error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
