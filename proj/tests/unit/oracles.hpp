#ifndef MULTICG_TESTS_ORACLES_HPP_
#define MULTICG_TESTS_ORACLES_HPP_

// Independent reference implementations used only by tests.

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

namespace multicg::testing {

// Pearson correlation written out term by term in long double: sample mean,
// sample standard deviation, then the averaged product of z-scores.
inline std::optional<double> pearson_oracle(const std::vector<double>& x,
                                            const std::vector<double>& y) {
  const std::size_t t = x.size();
  long double mx = 0, my = 0;
  for (std::size_t k = 0; k < t; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= t;
  my /= t;
  long double vx = 0, vy = 0;
  for (std::size_t k = 0; k < t; ++k) {
    vx += (x[k] - mx) * (x[k] - mx);
    vy += (y[k] - my) * (y[k] - my);
  }
  const long double sx = std::sqrt(vx / (t - 1));
  const long double sy = std::sqrt(vy / (t - 1));
  if (sx == 0 || sy == 0) return std::nullopt;
  long double acc = 0;
  for (std::size_t k = 0; k < t; ++k) {
    acc += ((x[k] - mx) / sx) * ((y[k] - my) / sy);
  }
  return static_cast<double>(acc / (t - 1));
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n,
                                         double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace multicg::testing

#endif  // MULTICG_TESTS_ORACLES_HPP_
