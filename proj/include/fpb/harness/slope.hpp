#pragma once

#include <vector>

namespace fpb {

// Least-squares fit of log(mean regret) against log(T).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

// Requires >= 4 points spanning at least two octaves of T and strictly
// positive means (a non-positive mean has no logarithm; the exception names
// the offending T).
SlopeFit fit_loglog_slope(const std::vector<double>& horizons,
                          const std::vector<double>& mean_regrets);

}  // namespace fpb
