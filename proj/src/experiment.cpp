#include "fpb/harness/experiment.hpp"

#include <stdexcept>

#include "fpb/policies/ml_is_ucb.hpp"
#include "fpb/rng.hpp"

namespace fpb {

void ExperimentConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  long long prev = 0;
  for (long long c : checkpoints) {
    if (c <= prev || c > horizon)
      throw std::invalid_argument(
          "checkpoints must be strictly increasing within [1, T]");
    prev = c;
  }
  if (policy.name == "ml_is_ucb") {
    auto d = ml_is_ucb_defaults(horizon);
    const int k = policy.bid_grid > 0 ? policy.bid_grid : d.bid_grid;
    const long long warmup = (long long)(d.levels + 1) * k;
    if (warmup >= horizon)
      throw std::invalid_argument(
          "horizon too short: the (L+1)K warmup rounds would exhaust it");
  }
}

std::vector<long long> default_checkpoints(long long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<long long> out;
  for (long long p = 1; p <= horizon; p *= 2) {
    out.push_back(p);
    if (p > horizon / 2) break;  // next doubling would overflow past T
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

BidDistribution resolve_distribution(const std::string& spec,
                                     std::uint64_t seed) {
  const std::string prefix = "random_piecewise";
  if (spec.rfind(prefix, 0) == 0) {
    int natoms = 8;
    if (spec.size() > prefix.size()) {
      if (spec[prefix.size()] != ':')
        throw std::invalid_argument("bad distribution spec: " + spec);
      natoms = std::stoi(spec.substr(prefix.size() + 1));
    }
    Rng rng(derive_seed(seed, 0, kStreamInstance));
    return BidDistribution::random_piecewise(rng, natoms);
  }
  return BidDistribution::parse(spec);
}

}  // namespace fpb
