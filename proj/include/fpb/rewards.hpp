#pragma once

#include <optional>
#include <vector>

#include "fpb/distribution.hpp"
#include "fpb/grid.hpp"

namespace fpb {

// One round of feedback under the censored channel: a winning bidder learns
// only that it won; a losing bidder sees the highest competing bid.
// Invariant: highest_competing_bid engaged iff !won, and then it exceeds the bid.
struct CensoredOutcome {
  bool won = false;
  std::optional<double> highest_competing_bid;
};

struct RewardQuery {
  double value = 0.0;
  double bid = 0.0;
};

// Realized reward (v - b) * 1{b >= m}; ties are wins. Inputs must lie in [0,1].
double instantaneous_reward(double value, double bid, double competing_bid);

// R(v, b) = (v - b) * G(b).
double expected_reward(double value, double bid, const BidDistribution& g);
inline double expected_reward(const RewardQuery& q, const BidDistribution& g) {
  return expected_reward(q.value, q.bid, g);
}

struct BestBid {
  int index = 0;
  double bid = 0.0;
  double reward = 0.0;
};

// argmax over the grid of R(v, .); ties resolved toward the LARGEST maximizer,
// which keeps v -> best bid non-decreasing.
BestBid oracle_best_bid(double value, const BidDistribution& g,
                        const GridSpec& grid);

// Sum over the trajectory of per-round grid-optimal expected rewards.
double oracle_trajectory_reward(const std::vector<double>& values,
                                const BidDistribution& g, const GridSpec& grid);

// Smallest index i (1-based) with i/m >= v; v = 0 maps to 1. Exact under the
// double comparisons i/m >= v, robust to rounding in v*m.
int quantize_index(double value, int m);
inline double quantize_value(double value, int m) {
  return double(quantize_index(value, m)) / m;
}

// Worst-case regret cost of playing the (M, K)-quantized game for T rounds:
// (2/M + 1/K) * T.
double quantization_regret_gap(int value_grid, int bid_grid, long long horizon);

}  // namespace fpb
