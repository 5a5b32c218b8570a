// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "multicg/consensus.hpp"
#include "multicg/corpus.hpp"
#include "multicg/eval.hpp"
#include "multicg/factors.hpp"
#include "multicg/pipeline.hpp"
#include "multicg/series.hpp"
#include "multicg/synth.hpp"

namespace fs = std::filesystem;
using namespace multicg;

namespace {

const fs::path kFixture = MULTICG_FIXTURE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Pearson evaluated term by term in long double.
double pearson_direct(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const auto t = x.size();
  long double mx = 0, my = 0;
  for (std::size_t k = 0; k < t; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= t;
  my /= t;
  long double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < t; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  const long double sx = std::sqrt(sxx / (t - 1)), sy = std::sqrt(syy / (t - 1));
  for (std::size_t k = 0; k < t; ++k) {
    sxy += ((x[k] - mx) / sx) * ((y[k] - my) / sy);
  }
  return static_cast<double>(sxy / (t - 1));
}

Outcome kernel_oracles() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(30), y(30);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    worst = std::max(worst, std::abs(*pearson(x, y) - pearson_direct(x, y)));
  }

  std::vector<Entity> entries;
  for (const char* s : {"AA", "BB", "CC", "DD", "EE", "FF", "GG", "HH"}) {
    entries.push_back({s, s, ""});
  }
  EntityCatalog catalog(entries);
  std::bernoulli_distribution coin(0.25);
  std::size_t jaccard_mismatch = 0;
  for (int trial = 0; trial < 100; ++trial) {
    MentionSetTable table{PostKind::kTweet,
                          TimeWindow(Date(2014, 1, 1), Date(2014, 1, 2)), {}};
    for (const auto& e : entries) {
      auto& s = table.sets[e.symbol];
      for (int doc = 0; doc < 30; ++doc) {
        if (coin(rng)) s.insert("d" + std::to_string(doc));
      }
    }
    auto m = build_cooccurrence_graph(table, catalog);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = 0; j < entries.size(); ++j) {
        const auto& a = table.sets[entries[i].symbol];
        const auto& b = table.sets[entries[j].symbol];
        std::vector<std::string> inter, uni;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(inter));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                       std::back_inserter(uni));
        double expect = i == j ? (a.empty() ? 0.0 : 1.0)
                        : uni.empty()
                            ? 0.0
                            : double(inter.size()) / double(uni.size());
        jaccard_mismatch += m.values(i, j) != expect;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && jaccard_mismatch == 0 && secs < 1.0,
          "max |pearson - direct| = " + fmt("%.2e", worst) +
              ", jaccard mismatches = " + std::to_string(jaccard_mismatch) +
              ", " + fmt("%.3f", secs) + " s"};
}

MatrixList random_graph_set(std::uint64_t seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixList views;
  for (std::size_t v = 0; v < m; ++v) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) e(i, j) = e(j, i) = u(rng);
    }
    views.push_back(e);
  }
  return views;
}

struct SolverAudit {
  std::size_t runs = 0;
  std::size_t monotone = 0;
  std::size_t converged = 0;
  std::size_t max_iterations = 0;
  double worst_m = 0.0;
  double worst_o = 0.0;
  double last_change = 0.0;  // worst final relative change
  double secs = 0.0;
};

SolverAudit audit_solver() {
  SolverAudit a;
  SolverConfig cfg;
  cfg.alpha = 0.25;
  cfg.tol = 1e-8;
  cfg.max_iter = 1000;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto E = random_graph_set(seed, 20, 6);
    SolveObserver obs;
    obs.after_m_step = [&](std::size_t, const Eigen::MatrixXd& O,
                           const MatrixList& M) {
      for (std::size_t i = 0; i < E.size(); ++i) {
        a.worst_m = std::max(
            a.worst_m, (O.transpose() * O * M[i] - O.transpose() * E[i]).norm());
      }
    };
    obs.after_o_step = [&](std::size_t, const Eigen::MatrixXd& O,
                           const MatrixList& M) {
      Eigen::MatrixXd lhs = cfg.alpha * O;
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(O.rows(), O.cols());
      for (std::size_t i = 0; i < E.size(); ++i) {
        lhs += O * (M[i] * M[i].transpose());
        rhs += E[i] * M[i].transpose();
      }
      a.worst_o = std::max(a.worst_o, (lhs - rhs).norm());
    };
    // Audit callbacks are excluded from the timed solver runtime.
    const auto t0 = Clock::now();
    auto r = solve_multicg(E, cfg);
    a.secs += seconds_since(t0);
    solve_multicg(E, cfg, &obs);

    ++a.runs;
    bool mono = true;
    const auto& tr = r.objective_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) {
      mono = mono && tr[k] <= tr[k - 1] * (1.0 + 1e-9);
    }
    a.monotone += mono;
    a.converged += r.converged;
    a.max_iterations = std::max(a.max_iterations, r.iterations);
    const double change =
        std::abs(tr.back() - tr[tr.size() - 2]) / std::max(1.0, tr[tr.size() - 2]);
    a.last_change = std::max(a.last_change, change);
  }
  return a;
}

Outcome solver_monotonicity(const SolverAudit& a) {
  return {a.monotone == a.runs && a.converged == a.runs && a.secs < 10.0,
          std::to_string(a.monotone) + "/" + std::to_string(a.runs) +
              " traces non-increasing, " + std::to_string(a.converged) + "/" +
              std::to_string(a.runs) + " converged (max iterations " +
              std::to_string(a.max_iterations) + ", worst final change " +
              fmt("%.2e", a.last_change) + "), " + fmt("%.2f", a.secs) + " s"};
}

Outcome stationarity(const SolverAudit& a) {
  return {a.worst_m < 1e-8 && a.worst_o < 1e-8,
          "max M-step residual " + fmt("%.2e", a.worst_m) +
              ", max O-step residual " + fmt("%.2e", a.worst_o)};
}

Outcome reconstruction() {
  auto e = random_graph_set(404, 15, 1).front();
  MatrixList E(4, e);
  SolverConfig cfg;
  cfg.alpha = 1e-6;
  auto r = solve_multicg(E, cfg);
  double worst = 0.0;
  for (const auto& m : r.M) {
    worst = std::max(worst, (e - r.O * m).cwiseAbs().maxCoeff());
  }
  return {r.converged && worst < 1e-4,
          "converged " + std::string(r.converged ? "yes" : "no") + " after " +
              std::to_string(r.iterations) + " iterations, max |E - O M_i| = " +
              fmt("%.2e", worst)};
}

Outcome direction_of_effect() {
  NoiseConfig noise;
  noise.views = 6;
  noise.pattern = ReliabilityPattern::kPerPairRandom;
  noise.noise_scale = 0.5;
  SolverConfig solver;
  solver.alpha = 0.25;
  std::vector<std::uint64_t> seeds(50);
  std::iota(seeds.begin(), seeds.end(), 1);
  const auto t0 = Clock::now();
  auto s = compare_recovery(20, noise, solver, seeds, 10);
  const double secs = seconds_since(t0);
  return {s.at_least_rate >= 0.8 && s.mean_gap > 0.0 && secs < 60.0,
          "multi-CG >= SA in " + std::to_string(s.wins + s.ties) + "/50 seeds (" +
              std::to_string(s.wins) + " strict), mean gap " +
              fmt("%+.4f", s.mean_gap) + ", " + fmt("%.2f", secs) + " s"};
}

double closed_form_ceiling(std::size_t n, std::size_t k) {
  long double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      total += static_cast<long double>(k - j + 1) / std::log2((long double)j + 1);
    }
  }
  return static_cast<double>(total / n);
}

Outcome ranking_ceiling() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  std::string sizes;
  for (std::size_t k : {3u, 5u, 10u}) {
    // k peers need n >= k + 1.
    const std::size_t n = std::max<std::size_t>(10, k + 1);
    CorrelationMatrix truth{FactorId::named("truth"), {},
                            Eigen::MatrixXd::Identity(n, n), ValueDomain::kFree,
                            0};
    for (std::size_t i = 0; i < n; ++i) {
      truth.order.push_back("S" + std::to_string(100 + i));
      for (std::size_t j = i + 1; j < n; ++j) {
        truth.values(i, j) = truth.values(j, i) = u(rng);
      }
    }
    worst = std::max(worst, std::abs(avg_dcg(truth, truth, k).avg_dcg -
                                     closed_form_ceiling(n, k)));
    sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
  }
  std::size_t beaten = 0, checked = 0;
  for (std::size_t peers = 1; peers <= 6; ++peers) {
    std::vector<std::size_t> ideal(peers);
    std::iota(ideal.begin(), ideal.end(), 0);
    for (std::size_t k = 1; k <= peers; ++k) {
      const double best = dcg_k(relevance_grades(ideal, ideal, k));
      auto perm = ideal;
      do {
        ++checked;
        beaten += dcg_k(relevance_grades(perm, ideal, k)) > best + 1e-12;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return {worst <= 1e-10 && beaten == 0,
          "max |avgDCG - closed form| = " + fmt("%.2e", worst) + " (n = " +
              sizes + "), " + std::to_string(checked) +
              " permutations enumerated, " + std::to_string(beaten) +
              " beat the ideal grading"};
}

Outcome matrix_invariants() {
  const auto catalog = EntityCatalog::load(kFixture / "catalog.csv");
  const auto corpus = parse_mention_corpus(kFixture / "corpus.jsonl", catalog);
  const auto market = load_market_directory(kFixture / "market", catalog);
  const TimeWindow window(Date(2014, 3, 3), Date(2014, 4, 11));
  const SmoothingConfig sma{10};

  std::size_t checked = 0, violations = 0;
  auto check = [&](const CorrelationMatrix& m) {
    ++checked;
    violations += find_violations(m, 1e-12).size();
  };
  for (const auto& m : build_factor_set(corpus.records, catalog, window,
                                        kDefaultLags, sma)) {
    check(m);
  }
  auto truth = build_ground_truth(market, catalog, window);
  check(truth.trading_volume);
  check(truth.closing_price);
  check(truth.historical_volatility);

  double worst = 0.0;
  for (auto kind : {PostKind::kTweet, PostKind::kRetweet}) {
    auto series = build_daily_series(corpus.records, catalog, window, kind);
    auto scaled = series;
    for (auto& [sym, s] : scaled) {
      for (auto& v : s.values) v *= 3.0;
    }
    auto a = build_volume_graph(series, catalog, sma);
    auto b = build_volume_graph(scaled, catalog, sma);
    worst = std::max(worst, (a.values - b.values).cwiseAbs().maxCoeff());
    for (int l : kDefaultLags) {
      auto la = build_lagged_graph(series, catalog, sma, {l});
      auto lb = build_lagged_graph(scaled, catalog, sma, {l});
      worst = std::max(worst, (la.values - lb.values).cwiseAbs().maxCoeff());
    }
  }
  return {violations == 0 && worst <= 1e-10,
          std::to_string(checked) + " matrices, " + std::to_string(violations) +
              " violations, max change under x3 scaling " + fmt("%.2e", worst)};
}

Outcome alpha_stability() {
  const auto scenario = generate_planted(20, NoiseConfig{}, 1);
  std::vector<double> scores;
  std::string listing;
  for (double a : {0.05, 0.15, 0.25, 0.4, 0.8}) {
    SolverConfig cfg;
    cfg.alpha = a;
    auto r = solve_multicg(scenario.views, cfg);
    scores.push_back(
        score_recovery(scenario, consensus_matrix(scenario.views, r), 10));
    listing += (listing.empty() ? "" : " ") + fmt("%.3f", scores.back());
  }
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double mean =
      std::accumulate(scores.begin(), scores.end(), 0.0) / scores.size();
  const double rel = (*hi - *lo) / mean;
  return {rel < 0.15, "avgDCG@10 = [" + listing + "], spread " +
                          fmt("%.2f", 100.0 * rel) + "% of mean"};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).generic_string()] = s.str();
  }
  return files;
}

Outcome end_to_end_determinism() {
  RunConfig cfg;
  cfg.catalog = kFixture / "catalog.csv";
  cfg.corpus = kFixture / "corpus.jsonl";
  cfg.market_dir = kFixture / "market";
  cfg.start = Date(2014, 3, 3);
  cfg.end = Date(2014, 4, 11);
  cfg.ks = {2, 3, 4, 5};
  cfg.out = fs::temp_directory_path() / "multicg_acceptance_e2e";
  std::vector<std::map<std::string, std::string>> runs;
  std::size_t records = 0;
  for (int run = 0; run < 2; ++run) {
    fs::remove_all(cfg.out);
    records = cmd_build_graphs(cfg).records;
    cmd_solve(cfg);
    cmd_evaluate(cfg);
    cmd_sweep_alpha(cfg);
    runs.push_back(snapshot(cfg.out));
  }
  fs::remove_all(cfg.out);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : runs[0]) {
    auto it = runs[1].find(name);
    differing += it == runs[1].end() || it->second != bytes;
  }
  differing += runs[1].size() - std::min(runs[1].size(), runs[0].size());
  return {differing == 0 && !runs[0].empty() && records >= 200,
          std::to_string(runs[0].size()) + " files from " +
              std::to_string(records) + " records, " +
              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  SolverAudit audit;
  bool audited = false;
  auto solver_audit = [&]() -> const SolverAudit& {
    if (!audited) {
      audit = audit_solver();
      audited = true;
    }
    return audit;
  };
  const std::vector<Criterion> criteria = {
      {1, "kernel oracle equivalence", kernel_oracles},
      {2, "solver monotonicity and convergence",
       [&] { return solver_monotonicity(solver_audit()); }},
      {3, "stationarity residuals", [&] { return stationarity(solver_audit()); }},
      {4, "consensus reconstruction", reconstruction},
      {5, "direction of effect (multi-CG vs SA)", direction_of_effect},
      {6, "ranking metric ceiling", ranking_ceiling},
      {7, "matrix invariant suite", matrix_invariants},
      {8, "alpha-sweep stability", alpha_stability},
      {9, "end-to-end determinism", end_to_end_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
