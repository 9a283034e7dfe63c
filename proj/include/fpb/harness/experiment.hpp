#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpb/distribution.hpp"
#include "fpb/policies/policy.hpp"

namespace fpb {

struct ExperimentConfig {
  PolicyConfig policy;
  std::string env_spec = "uniform";
  std::string values_spec = "iid_uniform";
  long long horizon = 0;
  int replications = 1;
  std::uint64_t seed = 1;
  std::vector<long long> checkpoints;  // empty -> default_checkpoints(horizon)
  std::string out_dir = ".";
  bool record_realized = false;

  // Throws invalid_argument on: horizon < 1, replications < 1, unsorted or
  // out-of-range checkpoints, or a horizon too short for the chosen policy.
  void validate() const;
};

// Powers of two up to T, plus T itself.
std::vector<long long> default_checkpoints(long long horizon);

// Materializes a market/demand spec. Deterministic families go through
// BidDistribution::parse; "random_piecewise[:natoms]" (default 8 atoms) draws
// the instance from the instance stream of `seed`, so one experiment sweep
// resolves it exactly once and every horizon faces the same market.
BidDistribution resolve_distribution(const std::string& spec,
                                     std::uint64_t seed);

}  // namespace fpb
