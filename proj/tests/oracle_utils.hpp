#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library code paths they check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "fpb/distribution.hpp"
#include "fpb/grid.hpp"
#include "fpb/rng.hpp"

namespace fpb::testing {

struct NaiveBest {
  int index;
  double bid;
  double reward;
};

// Brute-force argmax of (v - b) * G(b): materialize every grid reward, take the
// max, then pick the last index attaining it (largest-maximizer ties).
inline NaiveBest naive_best_bid(double v, const BidDistribution& g,
                                const GridSpec& grid) {
  std::vector<double> r(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    r[i] = (v - grid.point(i)) * g.cdf(grid.point(i));
  double best = *std::max_element(r.begin(), r.end());
  int idx = 0;
  for (int i = 0; i < grid.size(); ++i)
    if (r[i] == best) idx = i;
  return {idx, grid.point(idx), best};
}

// Kolmogorov distance between the empirical CDF of samples and F.
// sup_x |F_n - F| via the one-sided statistics; the lower side must use the
// left limit F(x-) or every atom of mass p would register as distance p.
inline double kolmogorov_distance(std::vector<double> samples,
                                  const BidDistribution& f) {
  std::sort(samples.begin(), samples.end());
  double n = double(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double fx = f.cdf(samples[i]);
    double fx_left = f.cdf(samples[i] - 1e-12);
    d = std::max(d, (i + 1) / n - fx);
    d = std::max(d, fx_left - i / n);
  }
  return d;
}

struct McStats {
  double mean;
  double se;
};

template <class Fn>
McStats mc_mean(long n, Fn draw) {
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n; ++i) {
    double x = draw();
    sum += x;
    sumsq += x * x;
  }
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

// Riemann sum of integral_0^a F(x) dx on a fine midpoint grid.
inline double riemann_integral_cdf(const BidDistribution& f, double a,
                                   int steps = 200000) {
  double h = a / steps, acc = 0.0;
  for (int i = 0; i < steps; ++i) acc += f.cdf((i + 0.5) * h) * h;
  return acc;
}

}  // namespace fpb::testing
