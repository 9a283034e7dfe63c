#include "fpb/rewards.hpp"

#include <cmath>
#include <stdexcept>

namespace fpb {
namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

}  // namespace

double instantaneous_reward(double value, double bid, double competing_bid) {
  check_unit(value, "value");
  check_unit(bid, "bid");
  check_unit(competing_bid, "competing bid");
  return bid >= competing_bid ? value - bid : 0.0;
}

double expected_reward(double value, double bid, const BidDistribution& g) {
  check_unit(value, "value");
  check_unit(bid, "bid");
  return (value - bid) * g.cdf(bid);
}

BestBid oracle_best_bid(double value, const BidDistribution& g,
                        const GridSpec& grid) {
  check_unit(value, "value");
  BestBid best{0, grid.point(0), expected_reward(value, grid.point(0), g)};
  for (int i = 1; i < grid.size(); ++i) {
    double b = grid.point(i);
    double r = expected_reward(value, b, g);
    if (r >= best.reward) best = {i, b, r};
  }
  return best;
}

double oracle_trajectory_reward(const std::vector<double>& values,
                                const BidDistribution& g, const GridSpec& grid) {
  double total = 0.0;
  for (double v : values) total += oracle_best_bid(v, g, grid).reward;
  return total;
}

int quantize_index(double value, int m) {
  check_unit(value, "value");
  if (m < 1) throw std::invalid_argument("quantizer size must be >= 1");
  int i = int(std::ceil(value * m));
  while (i > 1 && double(i - 1) / m >= value) --i;
  while (i < m && double(i) / m < value) ++i;
  if (i < 1) i = 1;
  return i;
}

double quantization_regret_gap(int value_grid, int bid_grid, long long horizon) {
  if (value_grid < 1 || bid_grid < 1 || horizon < 0)
    throw std::invalid_argument("quantization_regret_gap: bad arguments");
  return (2.0 / value_grid + 1.0 / bid_grid) * double(horizon);
}

}  // namespace fpb
