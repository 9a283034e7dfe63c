#pragma once

#include <vector>

#include "fpb/distribution.hpp"
#include "fpb/grid.hpp"
#include "fpb/rng.hpp"

namespace fpb {

// Realized newsvendor reward p*min(a,d) - h*(a-d)^+. Computable from the
// censored observation min(a, d) alone, which is the whole point: lost sales
// are never observed, but maximizing this reward is equivalent to minimizing
// the unobservable cost, which differs by the action-free constant p*E[d].
double inventory_reward(double level, double demand, double price,
                        double holding);

// Reward of any level a <= the level actually ordered, reconstructed from the
// censored observation: min(a, d) = min(a, min(level_played, d)) when
// a <= level_played. Rejects queries above the played level.
double downward_reveal(double query_level, double level_played, double observed,
                       double price, double holding);

// E[p*min(a,d) - h*(a-d)^+] = p*(a - I(a)) - h*I(a) with I(a) = int_0^a F.
double expected_inventory_reward(double level, const BidDistribution& demand,
                                 double price, double holding);

class InventoryEnv {
 public:
  InventoryEnv(BidDistribution demand, double price, double holding,
               std::uint64_t seed);

  struct Step {
    double observed;  // min(level, demand) — all the policy may see
    double demand;    // harness-only, for diagnostics
  };
  Step step(double level);

  const BidDistribution& demand() const { return demand_; }
  double price() const { return price_; }
  double holding() const { return holding_; }

 private:
  BidDistribution demand_;
  double price_, holding_;
  Rng rng_;
};

// Successive elimination over order levels {1/K, ..., 1}, K = ceil(sqrt(T)).
// Feedback is monotone downward — ordering a_t reveals the reward of every
// smaller level — so each round orders the LARGEST surviving level and updates
// every level below it. Single context; elimination band gamma * log T *
// (n_a^{-1/2} + n_max^{-1/2}) with the empirical argmax breaking ties toward
// the larger count, then the larger level.
class InventoryMsePolicy {
 public:
  InventoryMsePolicy(long long horizon, int levels, double gamma, double price,
                     double holding);

  const GridSpec& level_grid() const { return grid_; }
  int choose();
  void observe(double observed);

  const std::vector<int>& active_set() const { return active_[0]; }
  int empirical_best() const;
  double empirical_mean(int a) const;
  long long count(int a) const { return n_[a]; }

 private:
  GridSpec grid_;
  double band_scale_;  // gamma * log T
  double price_, holding_;
  std::vector<std::vector<int>> active_;
  std::vector<long double> sum_;
  std::vector<long long> n_;
  int pending_level_ = -1;
};

}  // namespace fpb
