#pragma once

#include <vector>

#include "fpb/policies/policy.hpp"

namespace fpb {

// Smallest n with n^3 >= T^2, i.e. ceil(T^(2/3)) without floating-point error.
long long etc_default_explore(long long horizon);

// Explore-then-commit baseline: bid 0 for the first ceil(T^(2/3)) rounds —
// losing reveals m exactly and winning at 0 means m = 0, so every exploration
// round yields one uncensored draw — then bid the plug-in argmax of
// (v - b) * Ghat(b) over the offset grid for the rest of the horizon,
// breaking ties toward the largest bid as the oracle does. Feedback after the
// switch is ignored.
class EtcPolicy final : public BidderPolicy {
 public:
  EtcPolicy(long long horizon, int bid_grid, long long explore_rounds);

  const GridSpec& bid_grid() const override { return grid_; }
  int choose(double value) override;
  void observe(const CensoredOutcome& outcome) override;

  long long explore_rounds() const { return explore_; }
  double empirical_cdf(int i) const;

 private:
  GridSpec grid_;
  long long explore_;
  std::vector<long long> cdf_start_;    // +1 to all indices >= entry
  std::vector<long long> cdf_counts_;  // materialized at the switch
  long long rounds_ = 0;
  bool committed_ = false;
  bool pending_ = false;
};

}  // namespace fpb
