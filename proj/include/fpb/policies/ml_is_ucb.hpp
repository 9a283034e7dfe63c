#pragma once

#include <vector>

#include "fpb/policies/policy.hpp"

namespace fpb {

struct MlIsUcbDefaults {
  int bid_grid;           // ceil(sqrt(T))
  int levels;             // ceil(log2(T))
  long long init_rounds;  // (levels + 1) * bid_grid, must be < T
};
MlIsUcbDefaults ml_is_ucb_defaults(long long horizon);

// n_i = #{bids b_s in the history with b_s <= b^i} for each grid point.
std::vector<long long> bid_coverage_counts(const GridSpec& grid,
                                           const std::vector<double>& bids);

// Per-action certificate widths for one level:
//   w_i = gamma * (sqrt(log_term * sum_{j>=i} p_prev[j]/counts[j])
//                  + log_term * (1/counts[i] + 5/sqrt(horizon))).
// p_prev comes from the PREVIOUS level and counts are the level's bid
// coverage, so a level's widths are a function of everything except that
// level's own outcomes — the decoupling that keeps each level's estimates
// conditionally independent. Enforced structurally: outcomes are not even a
// parameter.
std::vector<double> level_widths(const GridSpec& grid,
                                 const std::vector<double>& p_prev,
                                 const std::vector<long long>& counts,
                                 double gamma, double log_term,
                                 long long horizon);

// Multi-level interval-splitting UCB. Rounds 1..T0 bid 0 and seed every level
// with ceil(sqrt(T)) observations; afterwards each round descends through
// dyadic accuracy levels: compute certificate widths from the previous level's
// interval probabilities, bid the smallest candidate whose width exceeds
// 2^{-level} (assigning the round to that level), otherwise estimate, keep the
// candidates whose optimistic reward is within 2*2^{-level} of the best, and
// descend. The level loop always breaks: widths are floored at
// 5*gamma*log(LKT)/sqrt(T) > 2^{-L}.
class MlIsUcbPolicy final : public BidderPolicy {
 public:
  MlIsUcbPolicy(long long horizon, double gamma);
  MlIsUcbPolicy(long long horizon, int bid_grid, int levels, double gamma);

  const GridSpec& bid_grid() const override { return grid_; }
  int choose(double value) override;
  void observe(const CensoredOutcome& outcome) override;

  int levels() const { return levels_; }
  long long init_rounds() const { return init_rounds_; }
  long long rounds_played() const { return rounds_; }

  long long level_size(int level) const { return level_size_[level]; }
  long long level_bid_count(int level, int i) const {
    return bid_count_[level][i];
  }
  double level_probability(int level, int i) const;
  double initial_probability(int i) const { return p0_[i]; }

  // What the last choose() did: the level the round was assigned to, plus the
  // full width vectors and surviving candidate sets per visited level
  // (candidates[0] is the full action set; empty during the forced opening).
  struct RoundTrace {
    long long round = 0;
    int level = 0;
    int action = 0;
    std::vector<std::vector<double>> widths;
    std::vector<std::vector<int>> candidates;
  };
  const RoundTrace& last_round() const { return trace_; }

  // Test seam: lets a probe rewrite one level's outcome tallies to verify the
  // width firewall; never used by the policy itself.
  std::vector<long long>& mutable_level_hits(int level) {
    return hit_count_[level];
  }

 private:
  GridSpec grid_;
  int levels_;
  long long horizon_;
  long long init_rounds_;
  double gamma_;
  double log_term_;  // log(levels * K * T)

  std::vector<double> p0_;
  std::vector<std::vector<long long>> bid_count_;  // [level][i]
  std::vector<std::vector<long long>> hit_count_;  // [level][i]
  std::vector<long long> level_size_;

  long long rounds_ = 0;
  int pending_level_ = -1;
  int pending_bid_ = -1;
  RoundTrace trace_;
};

}  // namespace fpb
