#include "fpb/policies/policy.hpp"

#include <stdexcept>

#include "fpb/policies/etc_policy.hpp"
#include "fpb/policies/is_ucb.hpp"
#include "fpb/policies/ml_is_ucb.hpp"
#include "fpb/policies/mse.hpp"

namespace fpb {

OraclePolicy::OraclePolicy(BidDistribution g, GridSpec grid)
    : g_(std::move(g)), grid_(grid), cdf_(grid.size()) {
  for (int i = 0; i < grid_.size(); ++i) cdf_[i] = g_.cdf(grid_.point(i));
}

int OraclePolicy::choose(double value) {
  int best = 0;
  double best_reward = (value - grid_.point(0)) * cdf_[0];
  for (int i = 1; i < grid_.size(); ++i) {
    double r = (value - grid_.point(i)) * cdf_[i];
    if (r >= best_reward) {
      best = i;
      best_reward = r;
    }
  }
  return best;
}

std::unique_ptr<BidderPolicy> make_policy(const PolicyConfig& config,
                                          const BidDistribution* oracle_g) {
  if (config.horizon < 1)
    throw std::invalid_argument("policy config needs a horizon >= 1");
  long long t = config.horizon;
  int k = config.bid_grid ? config.bid_grid : sqrt_grid_size(t);
  if (config.name == "mse") {
    int m = config.value_grid ? config.value_grid : sqrt_grid_size(t);
    return std::make_unique<MsePolicy>(t, m, k, config.gamma);
  }
  if (config.name == "is_ucb")
    return std::make_unique<IsUcbPolicy>(t, k, config.gamma);
  if (config.name == "ml_is_ucb") {
    auto d = ml_is_ucb_defaults(t);
    return std::make_unique<MlIsUcbPolicy>(
        t, config.bid_grid ? config.bid_grid : d.bid_grid, d.levels,
        config.gamma);
  }
  if (config.name == "etc")
    return std::make_unique<EtcPolicy>(t, k, config.explore_rounds);
  if (config.name == "oracle") {
    if (!oracle_g)
      throw std::invalid_argument(
          "oracle policy needs the environment's bid distribution");
    return std::make_unique<OraclePolicy>(*oracle_g,
                                          GridSpec(GridStyle::kOffset, k));
  }
  throw std::invalid_argument("unknown policy: " + config.name);
}

}  // namespace fpb
