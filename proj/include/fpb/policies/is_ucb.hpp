#pragma once

#include <vector>

#include "fpb/policies/policy.hpp"

namespace fpb {

// Interval-splitting UCB over the offset grid {0, 1/K, ..., (K-1)/K}. The tail
// probability P(m > b^i) is decomposed into per-interval masses p_j estimated
// with individual sample counts n_j = #{s : b_s <= b^j}, and bids maximize
//   (v - b^i) * [1 - sum_{j>=i} p_j + gamma * (sqrt(sum_{j>=i} p_j/n_j) + 1/n_i)]
// unclipped, ties toward the smallest bid. Round 1 bids 0 so every count is
// positive afterwards. Ships as an empirical baseline: its estimates reuse
// adaptively chosen samples, so no regret guarantee is claimed.
class IsUcbPolicy final : public BidderPolicy {
 public:
  IsUcbPolicy(long long horizon, int bid_grid, double gamma);

  const GridSpec& bid_grid() const override { return grid_; }
  int choose(double value) override;
  void observe(const CensoredOutcome& outcome) override;

  double index_value(double value, int i) const;
  double interval_probability(int i) const;
  long long observation_count(int i) const { return n_[i]; }

 private:
  GridSpec grid_;
  double gamma_;
  std::vector<long long> hits_, n_;
  long long rounds_ = 0;
  int pending_bid_ = -1;
};

}  // namespace fpb
