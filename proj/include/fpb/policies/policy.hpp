#pragma once

#include <memory>
#include <string>

#include "fpb/distribution.hpp"
#include "fpb/grid.hpp"
#include "fpb/rewards.hpp"

namespace fpb {

// Round-based bidding policy. One round is: choose(v) -> the grid index of the
// bid to submit, then observe() with the auction's censored outcome. choose is
// deterministic given state and input; observe never sees the competing bid on
// a win. Policies own no RNG — all randomness lives in the environment.
class BidderPolicy {
 public:
  virtual ~BidderPolicy() = default;

  virtual const GridSpec& bid_grid() const = 0;
  virtual int choose(double value) = 0;
  virtual void observe(const CensoredOutcome& outcome) = 0;
};

struct PolicyConfig {
  std::string name = "mse";  // mse | is_ucb | ml_is_ucb | etc | oracle
  long long horizon = 0;
  double gamma = 3.0;
  int value_grid = 0;        // M; 0 = policy default
  int bid_grid = 0;          // K; 0 = policy default
  long long explore_rounds = 0;  // etc only; 0 = ceil(T^(2/3))
};

// oracle_g is required for name == "oracle" and ignored otherwise.
std::unique_ptr<BidderPolicy> make_policy(const PolicyConfig& config,
                                          const BidDistribution* oracle_g = nullptr);

// Bids the per-round argmax of (v - b) G(b) over its grid; the zero-regret
// baseline for the harness.
class OraclePolicy final : public BidderPolicy {
 public:
  OraclePolicy(BidDistribution g, GridSpec grid);

  const GridSpec& bid_grid() const override { return grid_; }
  int choose(double value) override;
  void observe(const CensoredOutcome&) override {}

 private:
  BidDistribution g_;
  GridSpec grid_;
  std::vector<double> cdf_;  // G at each grid point
};

}  // namespace fpb
