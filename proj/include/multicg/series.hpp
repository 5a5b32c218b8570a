#ifndef MULTICG_SERIES_HPP_
#define MULTICG_SERIES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace multicg {

struct SmoothingConfig {
  std::size_t window = 10;  // SMA length, >= 1
};

// Negative lag: the peer series starts |lag| days earlier.
struct LagSpec {
  int lag = 0;
};

/// Simple moving average. out[d] is the mean of the last `window` values
/// ending at d, or of the available prefix when d < window.
std::vector<double> sma_smooth(std::span<const double> values,
                               SmoothingConfig cfg);

struct AlignedPair {
  std::vector<double> x;
  std::vector<double> y;
};

/// Aligns x against y shifted by `spec.lag` days (1-based):
///   lag > 0: (x_1..x_{T-l}, y_{1+l}..y_T)
///   lag < 0: (x_{1-l}..x_T, y_1..y_{T+l})
/// Throws std::invalid_argument when |lag| >= T or lengths differ.
AlignedPair apply_lag(std::span<const double> x, std::span<const double> y,
                      LagSpec spec);

/// Sample Pearson correlation,
///   1/(T-1) * sum_k ((x_k - mean_x)/s_x) * ((y_k - mean_y)/s_y)
/// with s the (T-1)-normalized standard deviation. Returns nullopt when
/// either series has (numerically) zero spread. Throws std::invalid_argument
/// on length mismatch or length < 2.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

/// out[i] = ln(close[i+1] / close[i]).
std::vector<double> log_returns(std::span<const double> close);

/// Rolling (n-1)-normalized standard deviation over `window` points; output
/// length is returns.size() - window + 1.
std::vector<double> rolling_volatility(std::span<const double> returns,
                                       std::size_t window = 21);

}  // namespace multicg

#endif  // MULTICG_SERIES_HPP_
