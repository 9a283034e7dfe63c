#include "fpb/policies/is_ucb.hpp"

#include <cmath>
#include <stdexcept>

namespace fpb {

IsUcbPolicy::IsUcbPolicy(long long horizon, int bid_grid, double gamma)
    : grid_(GridStyle::kOffset, bid_grid ? bid_grid : sqrt_grid_size(horizon)),
      gamma_(gamma),
      hits_(grid_.size(), 0),
      n_(grid_.size(), 0) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (gamma <= 0) throw std::invalid_argument("gamma must be > 0");
}

int IsUcbPolicy::choose(double value) {
  if (pending_bid_ >= 0)
    throw std::logic_error("choose called with an observation pending");
  if (rounds_ == 0) {
    pending_bid_ = 0;
    return 0;
  }
  int best = 0;
  double best_index = 0.0;
  double tail = 0.0, variance = 0.0;
  // Suffix sums make the scan O(K); descending i, then pick the smallest
  // argmax, so ties resolve toward the lower bid.
  for (int i = grid_.size() - 1; i >= 0; --i) {
    double p = double(hits_[i]) / double(n_[i]);
    tail += p;
    variance += p / double(n_[i]);
    double index = (value - grid_.point(i)) *
                   (1.0 - tail + gamma_ * (std::sqrt(variance) + 1.0 / double(n_[i])));
    if (i == grid_.size() - 1 || index >= best_index) {
      best = i;
      best_index = index;
    }
  }
  pending_bid_ = best;
  return best;
}

void IsUcbPolicy::observe(const CensoredOutcome& outcome) {
  if (pending_bid_ < 0) throw std::logic_error("observe called before choose");
  int played = pending_bid_;
  pending_bid_ = -1;
  ++rounds_;

  if (!outcome.won) {
    if (!outcome.highest_competing_bid)
      throw std::invalid_argument("loss outcome is missing the competing bid");
    // The containing interval's left endpoint is a grid point >= the bid
    // played, so exactly one tracked interval gains a hit.
    hits_[grid_.interval_index(*outcome.highest_competing_bid)] += 1;
  }
  for (int i = played; i < grid_.size(); ++i) n_[i] += 1;
}

double IsUcbPolicy::index_value(double value, int i) const {
  double tail = 0.0, variance = 0.0;
  for (int j = grid_.size() - 1; j >= i; --j) {
    double p = double(hits_[j]) / double(n_[j]);
    tail += p;
    variance += p / double(n_[j]);
  }
  return (value - grid_.point(i)) *
         (1.0 - tail + gamma_ * (std::sqrt(variance) + 1.0 / double(n_[i])));
}

double IsUcbPolicy::interval_probability(int i) const {
  return n_[i] == 0 ? 0.0 : double(hits_[i]) / double(n_[i]);
}

}  // namespace fpb
