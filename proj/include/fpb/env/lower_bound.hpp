#pragma once

#include <cstdint>
#include <vector>

#include "fpb/rng.hpp"

namespace fpb {

// Hard contextual instance with M contexts, K = 2M actions and per-pair
// Bernoulli rewards. Mean rewards (1-based c, a):
//   R(c, a) = 3/4 - |a + 1/2 - 2c| / (2K)          for a != 2c - 1
//   R(c, 2c-1) = 3/4 - (eps_c + 1) / (4K)          eps_c in {-1, +1}
// so the best action is 2c when eps_c = +1 and 2c-1 otherwise, and the mean
// matrix is 1/K-Lipschitz in a and 1/M-Lipschitz in c. Contexts follow the
// block-decreasing schedule (block_context), values scale as c/M.
class LowerBoundInstance {
 public:
  LowerBoundInstance(long long horizon, std::vector<int> epsilons);
  static LowerBoundInstance with_random_eps(long long horizon, int value_grid,
                                            Rng& rng);
  // M = ceil(T^(1/3)).
  static int default_value_grid(long long horizon);

  int value_grid() const { return m_; }
  int bid_grid() const { return 2 * m_; }
  long long horizon() const { return horizon_; }
  const std::vector<int>& epsilons() const { return eps_; }

  double mean_reward(int c, int a) const;
  int best_action(int c) const { return eps_[c - 1] > 0 ? 2 * c : 2 * c - 1; }
  double best_reward(int c) const { return mean_reward(c, best_action(c)); }
  int context_at(long long t) const;

  // Revealed Bernoulli block for a round with chosen action amin: independent
  // draws for every pair {(c, a): c in [M], a in [amin, K]}, context-major.
  std::vector<double> sample_reveal(int amin, Rng& rng) const;

 private:
  long long horizon_;
  int m_;
  std::vector<int> eps_;
};

}  // namespace fpb
