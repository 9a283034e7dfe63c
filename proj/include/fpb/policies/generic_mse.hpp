#pragma once

#include <vector>

#include "fpb/grid.hpp"

namespace fpb {

// Reward block revealed after one round of a monotone group bandit: one value
// for every (context, action) pair with action >= the action just played.
// rewards[c][k] is the reward of (context c, action min_action + k).
struct RevealBlock {
  int min_action = 0;
  std::vector<std::vector<double>> rewards;
};

// The same two-rule elimination policy as MsePolicy, but driven by arbitrary
// revealed reward blocks instead of an auction, with per-pair running means
// kept by the textbook incremental update (wide accumulators, one literal
// sweep per round). This is the reference path: slow, simple, and used both
// on abstract hard instances and to cross-check MsePolicy's factorized
// statistics and sweep scheduling.
class GenericMsePolicy {
 public:
  GenericMsePolicy(long long horizon, int contexts, int actions, double gamma);

  int num_contexts() const { return int(active_.size()); }
  int num_actions() const { return actions_; }

  int choose(int context);  // 0-based context -> 0-based action
  void observe(const RevealBlock& block);

  const std::vector<std::vector<int>>& active_sets() const { return active_; }
  double empirical_mean(int context, int action) const;
  long long count(int context, int action) const;
  int rule1_rescues() const { return rescues_; }

 private:
  int actions_;
  double band_scale_;  // gamma * log(K*M*T)
  std::vector<std::vector<int>> active_;
  std::vector<std::vector<long double>> mean_;
  std::vector<std::vector<long long>> count_;
  int rescues_ = 0;
  int pending_action_ = -1;
};

}  // namespace fpb
