#include "fpb/inventory/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpb/policies/mse_rules.hpp"

namespace fpb {

double inventory_reward(double level, double demand, double price,
                        double holding) {
  const double sold = std::min(level, demand);
  return price * sold - holding * (level - sold);
}

double downward_reveal(double query_level, double level_played, double observed,
                       double price, double holding) {
  if (query_level > level_played)
    throw std::invalid_argument(
        "cannot reconstruct the reward of a level above the one played");
  // min(query, demand) = min(query, observed) because observed =
  // min(level_played, demand) and query <= level_played.
  return inventory_reward(query_level, std::min(query_level, observed), price,
                          holding);
}

double expected_inventory_reward(double level, const BidDistribution& demand,
                                 double price, double holding) {
  const double shortfall = demand.integral_cdf(level);  // E[(level - d)^+]
  return price * (level - shortfall) - holding * shortfall;
}

InventoryEnv::InventoryEnv(BidDistribution demand, double price, double holding,
                           std::uint64_t seed)
    : demand_(std::move(demand)), price_(price), holding_(holding), rng_(seed) {
  if (price <= 0.0 || holding < 0.0)
    throw std::invalid_argument("price must be positive and holding cost nonnegative");
}

InventoryEnv::Step InventoryEnv::step(double level) {
  const double d = demand_.sample(rng_);
  return {std::min(level, d), d};
}

InventoryMsePolicy::InventoryMsePolicy(long long horizon, int levels,
                                       double gamma, double price,
                                       double holding)
    : grid_(GridStyle::kUnit, levels > 0 ? levels : sqrt_grid_size(horizon)),
      band_scale_(gamma * std::log(static_cast<double>(horizon))),
      price_(price),
      holding_(holding) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  active_.resize(1);
  active_[0].resize(grid_.size());
  for (int a = 0; a < grid_.size(); ++a) active_[0][a] = a;
  sum_.assign(grid_.size(), 0.0L);
  n_.assign(grid_.size(), 0);
}

int InventoryMsePolicy::choose() {
  if (pending_level_ >= 0)
    throw std::logic_error("previous round is still awaiting feedback");
  pending_level_ = active_[0].back();
  return pending_level_;
}

void InventoryMsePolicy::observe(double observed) {
  if (pending_level_ < 0)
    throw std::logic_error("no round is awaiting feedback");
  const int played = pending_level_;
  if (observed < 0.0 || observed > grid_.point(played) + 1e-12)
    throw std::invalid_argument("observation outside [0, level played]");
  pending_level_ = -1;
  for (int a = 0; a <= played; ++a) {
    sum_[a] += downward_reveal(grid_.point(a), grid_.point(played), observed,
                               price_, holding_);
    ++n_[a];
  }
  auto mean = [&](int, int a) {
    return static_cast<double>(sum_[a] / static_cast<long double>(n_[a]));
  };
  auto count = [&](int, int a) { return n_[a]; };
  eliminate_actions(active_, mean, count, band_scale_, /*prefer_high_tie=*/true);
}

int InventoryMsePolicy::empirical_best() const {
  const auto& act = active_[0];
  int best = act.front();
  for (int a : act) {
    const double ma = static_cast<double>(sum_[a] / static_cast<long double>(
                                                        std::max<long long>(n_[a], 1)));
    const double mb = static_cast<double>(sum_[best] / static_cast<long double>(
                                                           std::max<long long>(n_[best], 1)));
    if (ma > mb || (ma == mb && (n_[a] > n_[best] ||
                                 (n_[a] == n_[best] && a > best))))
      best = a;
  }
  return best;
}

double InventoryMsePolicy::empirical_mean(int a) const {
  if (a < 0 || a >= grid_.size()) throw std::out_of_range("level index");
  if (n_[a] == 0) return 0.0;
  return static_cast<double>(sum_[a] / static_cast<long double>(n_[a]));
}

}  // namespace fpb
