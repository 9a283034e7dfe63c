#include "fpb/harness/slope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fpb {

SlopeFit fit_loglog_slope(const std::vector<double>& horizons,
                          const std::vector<double>& mean_regrets) {
  const std::size_t n = horizons.size();
  if (mean_regrets.size() != n)
    throw std::invalid_argument("horizon and regret lists differ in length");
  if (n < 4) throw std::invalid_argument("slope fit needs at least 4 points");
  const auto [lo, hi] = std::minmax_element(horizons.begin(), horizons.end());
  if (!(*lo > 0.0) || *hi < 4.0 * *lo)
    throw std::invalid_argument("horizons must be positive and span >= 2 octaves");
  for (std::size_t i = 0; i < n; ++i)
    if (!(mean_regrets[i] > 0.0))
      throw std::invalid_argument("mean regret at T=" +
                                  std::to_string((long long)horizons[i]) +
                                  " is not positive; cannot take its log");

  double sx = 0.0, sy = 0.0;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(horizons[i]);
    y[i] = std::log(mean_regrets[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SlopeFit fit;
  fit.points = int(n);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += e * e;
  }
  fit.slope_stderr = std::sqrt(rss / double(n - 2) / sxx);
  return fit;
}

}  // namespace fpb
