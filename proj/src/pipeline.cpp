#include "multicg/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "multicg/corpus.hpp"
#include "multicg/csv.hpp"
#include "multicg/error.hpp"
#include "multicg/factors.hpp"

namespace multicg {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void write_json(const nlohmann::ordered_json& doc, const fs::path& path) {
  auto out = open_out(path);
  out << doc.dump(1) << '\n';
}

FactorId indicator_id(const std::string& indicator) {
  auto id = FactorId::from_stem(indicator);
  if (!id) throw InputError("unknown indicator '" + indicator + "'");
  return *id;
}

CorrelationMatrix read_stem(const fs::path& dir, const FactorId& id) {
  auto path = dir / (id.stem() + ".csv");
  if (!fs::exists(path)) {
    throw InputError("missing matrix file " + path.string());
  }
  return read_matrix_csv(path, id);
}

GraphSet read_factor_set(const RunConfig& cfg) {
  std::vector<CorrelationMatrix> views;
  for (const auto& id : factor_ids(cfg.lags)) {
    views.push_back(read_stem(graphs_dir(cfg), id));
  }
  return GraphSet(std::move(views));
}

SolverConfig solver_config(const RunConfig& cfg, double alpha) {
  SolverConfig s;
  s.alpha = alpha;
  s.tol = cfg.tol;
  s.max_iter = cfg.max_iter;
  s.ridge = cfg.ridge;
  s.normalize_views = cfg.normalize_views;
  return s;
}

double spread_of(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

std::vector<std::uint64_t> RunConfig::default_seeds() {
  std::vector<std::uint64_t> s(50);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["catalog"] = catalog.generic_string();
  j["corpus"] = corpus.generic_string();
  j["market"] = market_dir.generic_string();
  j["start"] = start ? start->to_string() : "";
  j["end"] = end ? end->to_string() : "";
  j["lags"] = lags;
  j["sma"] = sma;
  j["vol_window"] = vol_window;
  j["alpha"] = alpha;
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  j["ridge"] = ridge;
  j["normalize_views"] = normalize_views;
  j["k"] = ks;
  j["out"] = out.generic_string();
  j["alpha_grid"] = alpha_grid;
  j["synth"] = {{"n", synth_n},
                {"views", noise.views},
                {"noise_scale", noise.noise_scale},
                {"pattern", std::string(to_string(noise.pattern))},
                {"factor_rank", noise.factor_rank},
                {"uniform_level", noise.uniform_level},
                {"alpha", synth_alpha},
                {"k", synth_k},
                {"seeds", seeds}};
  return j;
}

void RunConfig::validate() const {
  if (ks.empty()) throw InputError("k list must not be empty");
  if (std::find(ks.begin(), ks.end(), 0u) != ks.end()) {
    throw InputError("k values must be positive");
  }
  if (sma < 1) throw InputError("SMA window must be >= 1");
  for (int l : lags) {
    if (l == 0) throw InputError("lag set must not contain 0");
  }
  for (const auto& ind : kIndicators) {
    auto it = alpha.find(ind);
    if (it == alpha.end() || !(it->second > 0.0)) {
      throw InputError("alpha for " + ind + " must be positive");
    }
  }
  for (double a : alpha_grid) {
    if (!(a > 0.0)) throw InputError("alpha grid values must be positive");
  }
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  if (max_iter < 1) throw InputError("max_iter must be >= 1");
  if (!(synth_alpha > 0.0)) throw InputError("synth alpha must be positive");
}

fs::path graphs_dir(const RunConfig& cfg) { return cfg.out / "graphs"; }
fs::path consensus_dir(const RunConfig& cfg) { return cfg.out / "consensus"; }
fs::path eval_dir(const RunConfig& cfg) { return cfg.out / "eval"; }

std::vector<FactorId> factor_ids(const std::vector<int>& lags) {
  std::vector<FactorId> ids;
  ids.push_back({FactorKind::kTweetVolume, 0, {}});
  ids.push_back({FactorKind::kRetweetVolume, 0, {}});
  for (int l : lags) ids.push_back(FactorId::tweet_lagged(l));
  for (int l : lags) ids.push_back(FactorId::retweet_lagged(l));
  ids.push_back({FactorKind::kCoTweet, 0, {}});
  ids.push_back({FactorKind::kCoRetweet, 0, {}});
  return ids;
}

BuildSummary cmd_build_graphs(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.start || !cfg.end) {
    throw InputError("build-graphs needs --start and --end");
  }
  const TimeWindow window(*cfg.start, *cfg.end);
  const auto catalog = EntityCatalog::load(cfg.catalog);
  const auto corpus = parse_mention_corpus(cfg.corpus, catalog);
  const auto market = load_market_directory(cfg.market_dir, catalog);

  auto factors = build_factor_set(corpus.records, catalog, window, cfg.lags,
                                  SmoothingConfig{cfg.sma});
  auto truth = build_ground_truth(market, catalog, window, cfg.vol_window);

  const auto dir = graphs_dir(cfg);
  fs::create_directories(dir);
  BuildSummary summary{corpus.records.size(), corpus.rejected_lines,
                       corpus.dropped_no_mention, truth.trading_days, {}};
  nlohmann::ordered_json fills = nlohmann::ordered_json::object();
  auto emit = [&](const CorrelationMatrix& m) {
    auto path = dir / (m.factor.stem() + ".csv");
    auto out = open_out(path);
    write_matrix_csv(m, out);
    summary.files.push_back(path);
    fills[m.factor.stem()] = m.undefined_fills;
  };
  for (const auto& m : factors) emit(m);
  emit(truth.trading_volume);
  emit(truth.closing_price);
  emit(truth.historical_volatility);

  nlohmann::ordered_json diag;
  diag["config"] = cfg.to_json();
  diag["records"] = summary.records;
  diag["rejected_lines"] = summary.rejected_lines;
  diag["dropped_no_mention"] = summary.dropped_no_mention;
  diag["window_days"] = window.length();
  diag["trading_days"] = summary.trading_days;
  diag["undefined_fills"] = std::move(fills);
  write_json(diag, dir / "diagnostics.json");
  return summary;
}

SolveSummary cmd_solve(const RunConfig& cfg) {
  cfg.validate();
  const auto views = read_factor_set(cfg);
  const auto dir = consensus_dir(cfg);
  fs::create_directories(dir);

  SolveSummary summary;
  nlohmann::ordered_json runs = nlohmann::ordered_json::object();
  for (const auto& ind : kIndicators) {
    const auto solver = solver_config(cfg, cfg.alpha.at(ind));
    auto result = solve_multicg(views, solver);
    {
      auto out = open_out(dir / ("multicg_" + ind + ".csv"));
      write_matrix_csv(consensus_matrix(views, result, ind), out);
    }
    {
      auto out = open_out(dir / ("multicg_" + ind + ".json"));
      write_result_json(views, result, solver, out);
    }
    runs[ind] = {{"alpha", solver.alpha},
                 {"iterations", result.iterations},
                 {"converged", result.converged},
                 {"final_objective", result.objective_trace.back()}};
    summary.results.emplace(ind, std::move(result));
  }
  {
    auto out = open_out(dir / "sa.csv");
    write_matrix_csv(simple_average(views), out);
  }
  nlohmann::ordered_json manifest;
  manifest["config"] = cfg.to_json();
  manifest["sa_weights"] = std::vector<double>(views.size(), 1.0);
  manifest["runs"] = std::move(runs);
  write_json(manifest, dir / "manifest.json");
  return summary;
}

std::map<std::string, ComparisonTable> cmd_evaluate(const RunConfig& cfg) {
  cfg.validate();
  const auto factors = read_factor_set(cfg);
  const auto sa = read_stem(consensus_dir(cfg),
                            {FactorKind::kSimpleAverage, 0, {}});
  const auto dir = eval_dir(cfg);
  fs::create_directories(dir);

  std::map<std::string, ComparisonTable> tables;
  for (const auto& ind : kIndicators) {
    const auto truth = read_stem(graphs_dir(cfg), indicator_id(ind));
    std::vector<CorrelationMatrix> methods(factors.begin(), factors.end());
    methods.push_back(sa);
    methods.push_back(
        read_stem(consensus_dir(cfg), FactorId::consensus(ind)));
    auto table = compare_methods(methods, truth, cfg.ks);
    {
      auto out = open_out(dir / ("table_" + ind + ".csv"));
      write_comparison_csv(table, out);
    }
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    for (const auto& m : methods) {
      for (auto k : cfg.ks) {
        auto r = avg_dcg(m, truth, k);
        nlohmann::ordered_json per = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < r.order.size(); ++i) {
          per[r.order[i]] = r.per_entity[i];
        }
        reports.push_back({{"method", r.method},
                           {"truth", r.truth},
                           {"k", r.k},
                           {"per_entity_dcg", std::move(per)},
                           {"avg_dcg", r.avg_dcg}});
      }
    }
    nlohmann::ordered_json doc;
    doc["config"] = cfg.to_json();
    doc["truth"] = ind;
    doc["reports"] = std::move(reports);
    write_json(doc, dir / ("report_" + ind + ".json"));
    tables.emplace(ind, std::move(table));
  }
  return tables;
}

std::vector<SweepRow> cmd_sweep_alpha(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.alpha_grid.empty()) throw InputError("alpha grid is empty");
  const auto views = read_factor_set(cfg);
  std::map<std::string, CorrelationMatrix> truths;
  for (const auto& ind : kIndicators) {
    truths.emplace(ind, read_stem(graphs_dir(cfg), indicator_id(ind)));
  }

  std::vector<SweepRow> rows;
  for (double a : cfg.alpha_grid) {
    auto result = solve_multicg(views, solver_config(cfg, a));
    auto consensus = consensus_matrix(views, result);
    for (const auto& ind : kIndicators) {
      for (auto k : cfg.ks) {
        rows.push_back({a, ind, k, avg_dcg(consensus, truths.at(ind), k).avg_dcg});
      }
    }
  }

  const auto dir = cfg.out / "sweep";
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "alpha_sweep.csv");
    out << "alpha,indicator,k,avg_dcg\n";
    for (const auto& r : rows) {
      out << csv::format_value(r.alpha) << ',' << r.indicator << ',' << r.k
          << ',' << csv::format_value(r.avg_dcg) << '\n';
    }
  }
  nlohmann::ordered_json spreads = nlohmann::ordered_json::array();
  for (const auto& ind : kIndicators) {
    for (auto k : cfg.ks) {
      std::vector<double> v;
      for (const auto& r : rows) {
        if (r.indicator == ind && r.k == k) v.push_back(r.avg_dcg);
      }
      const double mean =
          std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      spreads.push_back({{"indicator", ind},
                         {"k", k},
                         {"min", *std::min_element(v.begin(), v.end())},
                         {"max", *std::max_element(v.begin(), v.end())},
                         {"spread", spread_of(v)},
                         {"mean", mean}});
    }
  }
  nlohmann::ordered_json doc;
  doc["config"] = cfg.to_json();
  doc["spreads"] = std::move(spreads);
  write_json(doc, dir / "summary.json");
  return rows;
}

RecoverySummary cmd_synth(const RunConfig& cfg) {
  cfg.validate();
  auto solver = solver_config(cfg, cfg.synth_alpha);
  auto summary =
      compare_recovery(cfg.synth_n, cfg.noise, solver, cfg.seeds, cfg.synth_k);

  const auto dir = cfg.out / "synth";
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "report.csv");
    out << "seed,multicg,sa,gap,iterations,converged\n";
    for (const auto& s : summary.seeds) {
      out << s.seed << ',' << csv::format_value(s.multicg) << ','
          << csv::format_value(s.simple_average) << ','
          << csv::format_value(s.multicg - s.simple_average) << ','
          << s.iterations << ',' << (s.converged ? "true" : "false") << '\n';
    }
  }
  nlohmann::ordered_json doc;
  doc["config"] = cfg.to_json();
  doc["seeds"] = summary.seeds.size();
  doc["wins"] = summary.wins;
  doc["ties"] = summary.ties;
  doc["win_rate"] = summary.win_rate;
  doc["at_least_rate"] = summary.at_least_rate;
  doc["mean_gap"] = summary.mean_gap;
  write_json(doc, dir / "summary.json");
  return summary;
}

}  // namespace multicg
