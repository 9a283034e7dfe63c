#pragma once

#include <cstdint>

#include "fpb/distribution.hpp"
#include "fpb/rewards.hpp"
#include "fpb/rng.hpp"

namespace fpb {

// Repeated first-price auction against an iid highest competing bid m ~ G.
// step() returns the censored feedback the bidder sees plus the realized m on
// a diagnostics channel that policies must never read.
class AuctionEnv {
 public:
  struct Step {
    CensoredOutcome outcome;
    double competing_bid;
  };

  AuctionEnv(BidDistribution g, std::uint64_t seed)
      : g_(std::move(g)), rng_(seed) {}

  Step step(double bid) {
    if (!(bid >= 0.0 && bid <= 1.0))
      throw std::invalid_argument("bid outside [0,1]");
    double m = g_.sample(rng_);
    Step s;
    s.competing_bid = m;
    s.outcome.won = bid >= m;
    if (!s.outcome.won) s.outcome.highest_competing_bid = m;
    return s;
  }

  const BidDistribution& distribution() const { return g_; }

 private:
  BidDistribution g_;
  Rng rng_;
};

}  // namespace fpb
