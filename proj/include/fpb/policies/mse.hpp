#pragma once

#include <vector>

#include "fpb/policies/policy.hpp"

namespace fpb {

// Successive elimination over quantized values (contexts, unit grid of size M)
// and bids (actions, unit grid of size K). Each round plays the smallest
// surviving bid for the round's context; the censored outcome pins down
// 1{m <= b_a} for every a >= a_t (a win means m <= b_{a_t} <= b_a; a loss
// reveals m), so the per-pair statistics factorize:
//   mean(c, a) = (v_c - b_a) * hits_a / n_a,   n shared across contexts.
// Both tallies are plain integers, so means are exact rationals and identical
// across replays. Elimination checks run per context: each context is
// re-examined only once its certified-quiet window (context_quiet) expires or
// the previous context's minimum rises past its own, which leaves the action
// trajectory identical to checking every context every round while keeping the
// amortized per-round cost near O(1).
class MsePolicy final : public BidderPolicy {
 public:
  MsePolicy(long long horizon, int value_grid, int bid_grid, double gamma,
            bool lazy_sweeps = true);

  const GridSpec& bid_grid() const override { return bids_; }
  const GridSpec& value_grid() const { return values_; }

  int choose(double value) override;
  void observe(const CensoredOutcome& outcome) override;

  const std::vector<std::vector<int>>& active_sets() const { return active_; }
  long long observation_count(int action) const;
  double empirical_mean(int context, int action) const;
  long long rounds_played() const { return rounds_; }
  long long sweeps_run() const { return sweeps_; }
  long long eliminations() const { return eliminations_; }
  int rule1_rescues() const { return rescues_; }

 private:
  void materialize() const;
  void refresh_scratch();
  void sweep_due_contexts(bool all);
  bool context_quiet(int c, long long delta, double* margin = nullptr);
  long long context_window(int c);

  GridSpec values_;
  GridSpec bids_;
  long long horizon_;
  double band_scale_;  // gamma * log(K*M*T)
  bool lazy_;

  std::vector<std::vector<int>> active_;
  std::vector<int> min_active_;

  // +1 per round to every action index >= entry; prefix sums give n_a, hits_a.
  std::vector<long long> n_start_, hit_start_;
  mutable std::vector<long long> n_, hits_;
  mutable bool dirty_ = false;

  // Per-check scratch: double copies of the tallies, per-action confidence
  // radii and win-rate estimates, plus the certificate's per-arm terms.
  std::vector<double> dh_, dn_, rad_, phat_, inv_, rr_, cm_, cs_;

  // Per-context re-check schedule, with the running minimum of next_check_ so
  // quiet rounds cost O(1).
  std::vector<long long> next_check_;
  long long earliest_due_ = 1;

  long long rounds_ = 0;
  long long sweeps_ = 0;
  long long eliminations_ = 0;
  int rescues_ = 0;
  int pending_action_ = -1;
};

}  // namespace fpb
