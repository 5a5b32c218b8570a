#include "multicg/factors.hpp"

#include <algorithm>
#include <iterator>

#include "multicg/error.hpp"

namespace multicg {

namespace {

// Smoothed series in catalog order; all must share one window.
std::vector<std::vector<double>> smoothed_rows(const SeriesTable& series,
                                               const EntityCatalog& catalog,
                                               SmoothingConfig smoothing,
                                               PostKind* kind) {
  if (catalog.size() < 2) throw InputError("need at least two entities");
  std::vector<std::vector<double>> rows;
  const DailySeries* first = nullptr;
  for (const auto& e : catalog.entries()) {
    auto it = series.find(e.symbol);
    if (it == series.end()) {
      throw InputError("no daily series for " + e.symbol);
    }
    const auto& s = it->second;
    if (first == nullptr) {
      first = &s;
    } else if (!(s.window == first->window) || s.kind != first->kind) {
      throw InputError("daily series for " + e.symbol +
                       " does not share the window or kind");
    }
    rows.push_back(sma_smooth(s.values, smoothing));
  }
  *kind = first->kind;
  return rows;
}

CorrelationMatrix pearson_matrix(const std::vector<std::vector<double>>& rows,
                                 const std::vector<std::string>& order,
                                 FactorId factor) {
  const auto n = rows.size();
  CorrelationMatrix m{std::move(factor), order,
                      Eigen::MatrixXd::Identity(n, n), ValueDomain::kPearson,
                      0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = pearson(rows[i], rows[j]);
      if (!r) ++m.undefined_fills;
      m.values(i, j) = m.values(j, i) = r.value_or(0.0);
    }
  }
  return m;
}

}  // namespace

CorrelationMatrix build_volume_graph(const SeriesTable& series,
                                     const EntityCatalog& catalog,
                                     SmoothingConfig smoothing) {
  PostKind kind;
  auto rows = smoothed_rows(series, catalog, smoothing, &kind);
  FactorId id{kind == PostKind::kTweet ? FactorKind::kTweetVolume
                                       : FactorKind::kRetweetVolume,
              0,
              {}};
  return pearson_matrix(rows, catalog.symbols(), std::move(id));
}

CorrelationMatrix build_lagged_graph(const SeriesTable& series,
                                     const EntityCatalog& catalog,
                                     SmoothingConfig smoothing, LagSpec spec) {
  PostKind kind;
  auto rows = smoothed_rows(series, catalog, smoothing, &kind);
  FactorId id = kind == PostKind::kTweet ? FactorId::tweet_lagged(spec.lag)
                                         : FactorId::retweet_lagged(spec.lag);
  if (spec.lag == 0) {
    id = FactorId{kind == PostKind::kTweet ? FactorKind::kTweetVolume
                                           : FactorKind::kRetweetVolume,
                  0,
                  {}};
  }
  const auto n = rows.size();
  Eigen::MatrixXd directed = Eigen::MatrixXd::Identity(n, n);
  std::vector<bool> undefined(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto aligned = apply_lag(rows[i], rows[j], spec);
      auto r = pearson(aligned.x, aligned.y);
      undefined[i * n + j] = !r.has_value();
      directed(i, j) = r.value_or(0.0);
    }
  }
  CorrelationMatrix m{std::move(id), catalog.symbols(),
                      Eigen::MatrixXd::Identity(n, n), ValueDomain::kPearson,
                      0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values(i, j) = m.values(j, i) = 0.5 * (directed(i, j) + directed(j, i));
      if (undefined[i * n + j] || undefined[j * n + i]) ++m.undefined_fills;
    }
  }
  return m;
}

CorrelationMatrix build_cooccurrence_graph(const MentionSetTable& table,
                                           const EntityCatalog& catalog) {
  const auto n = catalog.size();
  if (n < 2) throw InputError("need at least two entities");
  std::vector<const std::set<std::string>*> sets;
  for (const auto& e : catalog.entries()) {
    auto it = table.sets.find(e.symbol);
    if (it == table.sets.end()) {
      throw InputError("no mention set for " + e.symbol);
    }
    sets.push_back(&it->second);
  }
  CorrelationMatrix m{{table.kind == PostKind::kTweet ? FactorKind::kCoTweet
                                                      : FactorKind::kCoRetweet,
                       0,
                       {}},
                      catalog.symbols(),
                      Eigen::MatrixXd::Zero(n, n),
                      ValueDomain::kJaccard,
                      0};
  for (std::size_t i = 0; i < n; ++i) {
    m.values(i, i) = sets[i]->empty() ? 0.0 : 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t common = 0;
      for (const auto& id : *sets[i]) common += sets[j]->count(id);
      const std::size_t total = sets[i]->size() + sets[j]->size() - common;
      if (total == 0) {
        ++m.undefined_fills;
        continue;
      }
      m.values(i, j) = m.values(j, i) =
          static_cast<double>(common) / static_cast<double>(total);
    }
  }
  return m;
}

GraphSet build_factor_set(const std::vector<MentionRecord>& records,
                          const EntityCatalog& catalog,
                          const TimeWindow& window,
                          const std::vector<int>& lags,
                          SmoothingConfig smoothing) {
  for (int l : lags) {
    if (l == 0) throw InputError("lag set must not contain 0");
    if (std::abs(l) >= window.length()) {
      throw InputError("lag " + std::to_string(l) +
                       " does not fit the window length");
    }
  }
  auto tweets = build_daily_series(records, catalog, window, PostKind::kTweet);
  auto retweets =
      build_daily_series(records, catalog, window, PostKind::kRetweet);
  std::vector<CorrelationMatrix> views;
  views.push_back(build_volume_graph(tweets, catalog, smoothing));
  views.push_back(build_volume_graph(retweets, catalog, smoothing));
  for (int l : lags) {
    views.push_back(build_lagged_graph(tweets, catalog, smoothing, {l}));
  }
  for (int l : lags) {
    views.push_back(build_lagged_graph(retweets, catalog, smoothing, {l}));
  }
  views.push_back(build_cooccurrence_graph(
      build_mention_sets(records, catalog, window, PostKind::kTweet), catalog));
  views.push_back(build_cooccurrence_graph(
      build_mention_sets(records, catalog, window, PostKind::kRetweet),
      catalog));
  return GraphSet(std::move(views));
}

GroundTruthSet build_ground_truth(
    const std::map<std::string, MarketSeries>& market,
    const EntityCatalog& catalog, const TimeWindow& window,
    std::size_t vol_window) {
  if (catalog.size() < 2) throw InputError("need at least two entities");
  // Trading days inside the window common to every entity.
  std::vector<Date> common;
  bool first = true;
  for (const auto& e : catalog.entries()) {
    auto it = market.find(e.symbol);
    if (it == market.end()) {
      throw InputError("missing market data for " + e.symbol);
    }
    std::vector<Date> inside;
    for (Date d : it->second.dates) {
      if (window.contains(d)) inside.push_back(d);
    }
    if (first) {
      common = std::move(inside);
      first = false;
    } else {
      std::vector<Date> both;
      std::set_intersection(common.begin(), common.end(), inside.begin(),
                            inside.end(), std::back_inserter(both));
      common = std::move(both);
    }
  }
  if (common.size() < 2) {
    throw InputError("fewer than two common trading days in the window");
  }

  std::vector<std::vector<double>> volume, returns, volatility;
  for (const auto& e : catalog.entries()) {
    const auto& s = market.at(e.symbol);
    const auto first_pos = static_cast<std::size_t>(
        std::lower_bound(s.dates.begin(), s.dates.end(), common.front()) -
        s.dates.begin());
    if (first_pos < vol_window) {
      throw InputError("insufficient history for " + e.symbol + ": need " +
                       std::to_string(vol_window) +
                       " trading days before " + window.start().to_string() +
                       ", have " + std::to_string(first_pos));
    }
    // All returns up to the last common day; r[p-1] is the return into day p.
    auto r = log_returns(s.close);
    std::vector<double> v, ret, vol;
    for (Date d : common) {
      auto p = static_cast<std::size_t>(
          std::lower_bound(s.dates.begin(), s.dates.end(), d) -
          s.dates.begin());
      v.push_back(s.volume[p]);
      ret.push_back(r[p - 1]);
      auto window_returns =
          std::span<const double>(r).subspan(p - vol_window, vol_window);
      vol.push_back(rolling_volatility(window_returns, vol_window).front());
    }
    volume.push_back(std::move(v));
    returns.push_back(std::move(ret));
    volatility.push_back(std::move(vol));
  }
  const auto order = catalog.symbols();
  return {
      pearson_matrix(volume, order, {FactorKind::kTradingVolume, 0, {}}),
      pearson_matrix(returns, order, {FactorKind::kClosingPrice, 0, {}}),
      pearson_matrix(volatility, order,
                     {FactorKind::kHistoricalVolatility, 0, {}}),
      common.size()};
}

}  // namespace multicg
