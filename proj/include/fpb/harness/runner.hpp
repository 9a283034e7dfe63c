#pragma once

#include <functional>

#include "fpb/harness/experiment.hpp"
#include "fpb/harness/results.hpp"

namespace fpb {

// One auction episode. Per-round regret is computed analytically from the true
// market distribution: max over the policy's own bid grid of (v - b) G(b)
// minus the same expression at the bid played — the max ranges over a set
// containing the played bid, so every term is >= 0 and the trace is
// non-decreasing by construction, never estimated from realized payoffs.
// Market and value randomness derive from (config.seed, replication) on fixed
// streams, so traces are reproducible and independent of scheduling.
RegretTrace run_auction_episode(const ExperimentConfig& config,
                                const BidDistribution& market,
                                int replication);

// Runs episodes 0..replications-1, FPB_THREADS workers (default 1; each
// episode owns all of its state). The returned vector is ordered by
// replication id regardless of completion order; the first failing
// replication aborts the batch with its id in the message.
std::vector<RegretTrace> run_replications(
    int replications, const std::function<RegretTrace(int)>& episode);

// Mean and sample standard deviation per checkpoint across replications.
// All traces must share a checkpoint schedule.
std::vector<SummaryRow> summarize(const std::vector<RegretTrace>& traces,
                                  long long horizon);

struct LowerBoundConfig {
  long long horizon = 0;
  int value_grid = 0;  // M; 0 -> ceil(T^(1/3)); action grid is 2M
  double gamma = 3.0;
  std::uint64_t seed = 1;
  std::vector<long long> checkpoints;
  // true: drive GenericMsePolicy round by round with sampled reveal blocks.
  // false: batched simulator — distributionally identical (binomial draws
  // between provably elimination-free stretches) and orders faster.
  bool exact = false;
};

// One episode on the hard contextual instance; the +/-1 reward perturbations
// are drawn fresh per replication from the instance stream.
RegretTrace run_lower_bound_episode(const LowerBoundConfig& config,
                                    int replication);

struct TwoPointResult {
  RegretTrace trace_g1;
  RegretTrace trace_g2;
  double average_final_regret = 0.0;
};

// Paired run on the two-point instances with value pinned at 1 and the same
// replication seed on both sides. Regret is measured against each side's
// exact continuous-bid optimum, a superset of any grid.
TwoPointResult run_two_point_pair(const PolicyConfig& policy,
                                  long long horizon, std::uint64_t seed,
                                  const std::vector<long long>& checkpoints,
                                  int replication);

struct InventoryConfig {
  std::string demand_spec = "uniform";
  double price = 1.0;
  double holding = 1.0;
  double gamma = 3.0;
  long long horizon = 0;
  int levels = 0;  // 0 -> ceil(sqrt(T))
  std::uint64_t seed = 1;
  std::vector<long long> checkpoints;
};

// One censored-demand episode. cum_regret uses the reward formulation;
// cum_aux carries the cost-formulation regret, which differs from it only by
// floating-point noise (the two objectives differ by a constant per round).
// final_level reports the grid level of the closing empirical argmax.
RegretTrace run_inventory_episode(const InventoryConfig& config,
                                  int replication);

}  // namespace fpb
