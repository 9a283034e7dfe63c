#pragma once

#include <cmath>
#include <stdexcept>

#include "fpb/distribution.hpp"

namespace fpb {

// Paired two-point environments used for the regret floor experiment: atoms at
// 1/3 and 2/3 with masses (1/2+d, 1/2-d) under g1 and swapped under g2, bidder
// value pinned at 1. Continuous-bid optimal rewards: (1+2d)/3 under g1 (bid
// 1/3) and exactly 1/3 under g2 (bid 2/3); the instances are 2d/3 apart.
struct TwoPointInstance {
  double delta;
  BidDistribution g1;
  BidDistribution g2;

  double optimal_reward_g1() const { return (1.0 + 2.0 * delta) / 3.0; }
  double optimal_reward_g2() const { return 1.0 / 3.0; }
};

inline TwoPointInstance make_two_point(double delta) {
  return {delta, BidDistribution::two_point(delta, 1),
          BidDistribution::two_point(delta, 2)};
}

// Horizon-calibrated separation d = 1/(4*sqrt(T)).
inline TwoPointInstance two_point_env(long long horizon) {
  if (horizon < 2) throw std::invalid_argument("two_point_env needs T >= 2");
  return make_two_point(0.25 / std::sqrt(double(horizon)));
}

// Minimax floor sqrt(T)/(24 e^2) for the paired instances.
inline double two_point_regret_floor(long long horizon) {
  return std::sqrt(double(horizon)) / (24.0 * std::exp(2.0));
}

}  // namespace fpb
