#include "multicg/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace multicg {

namespace {

double mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v, double mu) {
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Spread this small relative to the magnitude of the data is rounding
// noise from an otherwise constant series (e.g. an SMA of constants).
bool degenerate_spread(std::span<const double> v, double s) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  return s <= 1e-12 * scale || s == 0.0;
}

}  // namespace

std::vector<double> sma_smooth(std::span<const double> values,
                               SmoothingConfig cfg) {
  if (cfg.window == 0) throw std::invalid_argument("SMA window must be >= 1");
  std::vector<double> out(values.size());
  for (std::size_t d = 0; d < values.size(); ++d) {
    std::size_t first = d + 1 >= cfg.window ? d + 1 - cfg.window : 0;
    double sum = 0.0;
    for (std::size_t i = first; i <= d; ++i) sum += values[i];
    out[d] = sum / static_cast<double>(d - first + 1);
  }
  return out;
}

AlignedPair apply_lag(std::span<const double> x, std::span<const double> y,
                      LagSpec spec) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("apply_lag: series lengths differ");
  }
  const auto t = static_cast<long>(x.size());
  const long l = spec.lag;
  if (std::labs(l) >= t) {
    throw std::invalid_argument("apply_lag: |lag| " + std::to_string(l) +
                                " must be below series length " +
                                std::to_string(t));
  }
  const std::size_t len = static_cast<std::size_t>(t - std::labs(l));
  const std::size_t x_from = l < 0 ? static_cast<std::size_t>(-l) : 0;
  const std::size_t y_from = l > 0 ? static_cast<std::size_t>(l) : 0;
  AlignedPair out;
  out.x.assign(x.begin() + x_from, x.begin() + x_from + len);
  out.y.assign(y.begin() + y_from, y.begin() + y_from + len);
  return out;
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson: series lengths differ");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("pearson: need at least two samples");
  }
  const double mx = mean(x);
  const double my = mean(y);
  const double sx = sample_std(x, mx);
  const double sy = sample_std(y, my);
  if (degenerate_spread(x, sx) || degenerate_spread(y, sy)) {
    return std::nullopt;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sum += ((x[k] - mx) / sx) * ((y[k] - my) / sy);
  }
  return sum / static_cast<double>(x.size() - 1);
}

std::vector<double> log_returns(std::span<const double> close) {
  if (close.size() < 2) {
    throw std::invalid_argument("log_returns: need at least two prices");
  }
  std::vector<double> out(close.size() - 1);
  for (std::size_t i = 0; i < close.size(); ++i) {
    if (!(close[i] > 0.0)) {
      throw std::invalid_argument("log_returns: non-positive price at index " +
                                  std::to_string(i));
    }
    if (i > 0) out[i - 1] = std::log(close[i] / close[i - 1]);
  }
  return out;
}

std::vector<double> rolling_volatility(std::span<const double> returns,
                                       std::size_t window) {
  if (window < 2) {
    throw std::invalid_argument("rolling_volatility: window must be >= 2");
  }
  if (returns.size() < window) {
    throw std::invalid_argument("rolling_volatility: " +
                                std::to_string(returns.size()) +
                                " returns, need at least " +
                                std::to_string(window));
  }
  std::vector<double> out;
  out.reserve(returns.size() - window + 1);
  for (std::size_t end = window; end <= returns.size(); ++end) {
    auto w = returns.subspan(end - window, window);
    out.push_back(sample_std(w, mean(w)));
  }
  return out;
}

}  // namespace multicg
