#ifndef MULTICG_FACTORS_HPP_
#define MULTICG_FACTORS_HPP_

#include <map>
#include <string>
#include <vector>

#include "multicg/corpus.hpp"
#include "multicg/matrix.hpp"
#include "multicg/series.hpp"

namespace multicg {

/// Pairwise Pearson of the SMA-smoothed daily series, in catalog order.
/// Undefined pairs (zero spread) are filled with 0 and counted; the
/// diagonal is 1.
CorrelationMatrix build_volume_graph(const SeriesTable& series,
                                     const EntityCatalog& catalog,
                                     SmoothingConfig smoothing);

/// Pearson of smoothed x_i against x_j shifted by the lag, symmetrized as
/// (S + S^T) / 2, diagonal 1. A zero lag is allowed and reproduces
/// build_volume_graph.
CorrelationMatrix build_lagged_graph(const SeriesTable& series,
                                     const EntityCatalog& catalog,
                                     SmoothingConfig smoothing, LagSpec spec);

/// Jaccard overlap |S_i & S_j| / |S_i | S_j| of the per-entity document sets.
/// Pairs with an empty union are 0 and counted; diagonal is 1 for non-empty
/// sets and 0 otherwise.
CorrelationMatrix build_cooccurrence_graph(const MentionSetTable& table,
                                           const EntityCatalog& catalog);

inline const std::vector<int> kDefaultLags = {-2, -1, 1, 2};

/// The twelve Twitter-side factors in fixed order
///   t, r, t(l)..., r(l)..., ct, cr
/// for the given lag set (4 + 2 * |lags| matrices).
GraphSet build_factor_set(const std::vector<MentionRecord>& records,
                          const EntityCatalog& catalog,
                          const TimeWindow& window,
                          const std::vector<int>& lags,
                          SmoothingConfig smoothing);

struct GroundTruthSet {
  CorrelationMatrix trading_volume;
  CorrelationMatrix closing_price;
  CorrelationMatrix historical_volatility;
  std::size_t trading_days = 0;
};

/// Market-side correlation matrices over the trading days inside the window
/// that every entity traded on: Pearson of volume (tv), of daily log returns
/// (cp) and of the `vol_window`-day rolling std of log returns (hv). Needs
/// `vol_window` trading days before the first window day for each entity.
GroundTruthSet build_ground_truth(
    const std::map<std::string, MarketSeries>& market,
    const EntityCatalog& catalog, const TimeWindow& window,
    std::size_t vol_window = 21);

}  // namespace multicg

#endif  // MULTICG_FACTORS_HPP_
