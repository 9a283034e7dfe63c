#include "fpb/policies/etc_policy.hpp"

#include <cmath>
#include <stdexcept>

namespace fpb {

long long etc_default_explore(long long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  long long n = (long long)(std::cbrt(double(horizon) * double(horizon)));
  auto cubed_reaches = [&](long long x) {
    return (__int128)(x)*x * x >= (__int128)(horizon)*horizon;
  };
  while (n > 1 && cubed_reaches(n - 1)) --n;
  while (!cubed_reaches(n)) ++n;
  return n;
}

EtcPolicy::EtcPolicy(long long horizon, int bid_grid, long long explore_rounds)
    : grid_(GridStyle::kOffset, bid_grid ? bid_grid : sqrt_grid_size(horizon)),
      explore_(explore_rounds ? explore_rounds : etc_default_explore(horizon)),
      cdf_start_(grid_.size(), 0),
      cdf_counts_(grid_.size(), 0) {
  if (explore_ < 1) throw std::invalid_argument("need at least one exploration round");
}

int EtcPolicy::choose(double value) {
  if (pending_) throw std::logic_error("choose called with an observation pending");
  pending_ = true;
  if (rounds_ < explore_) return 0;

  if (!committed_) {
    long long acc = 0;
    for (int i = 0; i < grid_.size(); ++i) {
      acc += cdf_start_[i];
      cdf_counts_[i] = acc;
    }
    committed_ = true;
  }
  int best = 0;
  double best_reward = (value - grid_.point(0)) * double(cdf_counts_[0]);
  for (int i = 1; i < grid_.size(); ++i) {
    double r = (value - grid_.point(i)) * double(cdf_counts_[i]);
    if (r >= best_reward) {
      best = i;
      best_reward = r;
    }
  }
  return best;
}

void EtcPolicy::observe(const CensoredOutcome& outcome) {
  if (!pending_) throw std::logic_error("observe called before choose");
  pending_ = false;
  ++rounds_;
  if (rounds_ > explore_) return;

  // Bidding 0 de-censors the feedback: a win pins m to 0 exactly, a loss
  // reveals it. Tally #{m <= b^i} as a suffix increment.
  if (outcome.won) {
    cdf_start_[0] += 1;
  } else {
    if (!outcome.highest_competing_bid)
      throw std::invalid_argument("loss outcome is missing the competing bid");
    double m = *outcome.highest_competing_bid;
    int first = grid_.ceil_index(m);
    if (grid_.point(first) >= m) cdf_start_[first] += 1;
    // else m exceeds the top grid point and lands beyond every tracked level
  }
}

double EtcPolicy::empirical_cdf(int i) const {
  long long seen = rounds_ < explore_ ? rounds_ : explore_;
  if (seen == 0) return 0.0;
  long long acc = 0;
  for (int j = 0; j <= i; ++j) acc += cdf_start_[j];
  return double(acc) / double(seen);
}

}  // namespace fpb
