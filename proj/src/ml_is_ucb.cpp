#include "fpb/policies/ml_is_ucb.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fpb {

MlIsUcbDefaults ml_is_ucb_defaults(long long horizon) {
  int k = sqrt_grid_size(horizon);
  int l = 0;
  while ((1LL << l) < horizon) ++l;
  return {k, l, (long long)(l + 1) * k};
}

std::vector<long long> bid_coverage_counts(const GridSpec& grid,
                                           const std::vector<double>& bids) {
  std::vector<long long> counts(grid.size(), 0);
  for (double b : bids) {
    for (int i = grid.size() - 1; i >= 0 && grid.point(i) >= b; --i)
      counts[i] += 1;
  }
  return counts;
}

std::vector<double> level_widths(const GridSpec& grid,
                                 const std::vector<double>& p_prev,
                                 const std::vector<long long>& counts,
                                 double gamma, double log_term,
                                 long long horizon) {
  std::vector<double> w(grid.size());
  double variance = 0.0;
  double floor_term = 5.0 / std::sqrt(double(horizon));
  for (int i = grid.size() - 1; i >= 0; --i) {
    variance += p_prev[i] / double(counts[i]);
    w[i] = gamma * (std::sqrt(log_term * variance) +
                    log_term * (1.0 / double(counts[i]) + floor_term));
  }
  return w;
}

MlIsUcbPolicy::MlIsUcbPolicy(long long horizon, double gamma)
    : MlIsUcbPolicy(horizon, ml_is_ucb_defaults(horizon).bid_grid,
                    ml_is_ucb_defaults(horizon).levels, gamma) {}

MlIsUcbPolicy::MlIsUcbPolicy(long long horizon, int bid_grid, int levels,
                             double gamma)
    : grid_(GridStyle::kOffset, bid_grid),
      levels_(levels),
      horizon_(horizon),
      init_rounds_((long long)(levels + 1) * bid_grid),
      gamma_(gamma),
      log_term_(std::log(double(levels) * bid_grid * double(horizon))),
      p0_(bid_grid, 0.0),
      bid_count_(levels + 1, std::vector<long long>(bid_grid, 0)),
      hit_count_(levels + 1, std::vector<long long>(bid_grid, 0)),
      level_size_(levels + 1, 0) {
  if (levels < 1) throw std::invalid_argument("need at least one level");
  if (gamma <= 0) throw std::invalid_argument("gamma must be > 0");
  if (init_rounds_ >= horizon)
    throw std::invalid_argument(
        "horizon too small: the opening block (levels+1)*ceil(sqrt(T)) must "
        "fit strictly inside it");
}

int MlIsUcbPolicy::choose(double value) {
  if (pending_bid_ >= 0)
    throw std::logic_error("choose called with an observation pending");
  trace_ = RoundTrace{};
  trace_.round = rounds_ + 1;

  if (rounds_ < init_rounds_) {
    pending_level_ = int(rounds_ / grid_.size());
    pending_bid_ = 0;
    trace_.level = pending_level_;
    return 0;
  }

  std::vector<int> candidates(grid_.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  trace_.candidates.push_back(candidates);
  std::vector<double> p_prev = p0_;

  for (int level = 1; level <= levels_; ++level) {
    auto widths = level_widths(grid_, p_prev, bid_count_[level], gamma_,
                               log_term_, horizon_);
    trace_.widths.push_back(widths);
    double accuracy = std::ldexp(1.0, -level);  // 2^{-level}

    int explore = -1;
    for (int i : candidates) {
      if (widths[i] > accuracy) {
        explore = i;
        break;
      }
    }
    if (explore >= 0) {
      pending_level_ = level;
      pending_bid_ = explore;
      trace_.level = level;
      trace_.action = explore;
      return explore;
    }

    std::vector<double> p(grid_.size());
    for (int i = 0; i < grid_.size(); ++i)
      p[i] = double(hit_count_[level][i]) / double(bid_count_[level][i]);

    // r[i] = (v - b^i)(1 - sum_{j>=i} p_j); scan descending once.
    std::vector<double> optimistic(grid_.size());
    double tail = 0.0;
    for (int i = grid_.size() - 1; i >= 0; --i) {
      tail += p[i];
      optimistic[i] = (value - grid_.point(i)) * (1.0 - tail) + widths[i];
    }
    double best = optimistic[candidates.front()];
    for (int i : candidates) best = std::max(best, optimistic[i]);

    std::vector<int> kept;
    for (int i : candidates)
      if (optimistic[i] >= best - 2.0 * accuracy) kept.push_back(i);
    candidates = std::move(kept);
    trace_.candidates.push_back(candidates);
    p_prev = std::move(p);
  }
  throw std::logic_error(
      "level loop failed to break: certificate widths fell below the "
      "5*gamma*log(LKT)/sqrt(T) floor");
}

void MlIsUcbPolicy::observe(const CensoredOutcome& outcome) {
  if (pending_bid_ < 0) throw std::logic_error("observe called before choose");
  int level = pending_level_;
  int played = pending_bid_;
  pending_level_ = -1;
  pending_bid_ = -1;

  for (int i = played; i < grid_.size(); ++i) bid_count_[level][i] += 1;
  if (!outcome.won) {
    if (!outcome.highest_competing_bid)
      throw std::invalid_argument("loss outcome is missing the competing bid");
    hit_count_[level][grid_.interval_index(*outcome.highest_competing_bid)] += 1;
  }
  level_size_[level] += 1;
  ++rounds_;

  if (rounds_ == init_rounds_) {
    for (int i = 0; i < grid_.size(); ++i)
      p0_[i] = double(hit_count_[0][i]) / double(bid_count_[0][i]);
  }
}

double MlIsUcbPolicy::level_probability(int level, int i) const {
  long long n = bid_count_[level][i];
  return n == 0 ? 0.0 : double(hit_count_[level][i]) / double(n);
}

}  // namespace fpb
