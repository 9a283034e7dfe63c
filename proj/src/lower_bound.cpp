#include "fpb/env/lower_bound.hpp"

#include <cmath>
#include <stdexcept>

#include "fpb/env/value_schedule.hpp"

namespace fpb {

LowerBoundInstance::LowerBoundInstance(long long horizon,
                                       std::vector<int> epsilons)
    : horizon_(horizon), m_(int(epsilons.size())), eps_(std::move(epsilons)) {
  if (m_ < 1) throw std::invalid_argument("need at least one context");
  if (horizon_ < m_) throw std::invalid_argument("horizon shorter than blocks");
  for (int e : eps_)
    if (e != 1 && e != -1) throw std::invalid_argument("epsilons must be +-1");
}

LowerBoundInstance LowerBoundInstance::with_random_eps(long long horizon,
                                                       int value_grid,
                                                       Rng& rng) {
  std::vector<int> eps(value_grid);
  for (auto& e : eps) e = (rng() & 1) ? 1 : -1;
  return LowerBoundInstance(horizon, std::move(eps));
}

int LowerBoundInstance::default_value_grid(long long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  int m = int(std::ceil(std::cbrt(double(horizon))));
  while (m > 1 && (m - 1LL) * (m - 1) * (m - 1) >= horizon) --m;
  while (1LL * m * m * m < horizon) ++m;
  return m;
}

double LowerBoundInstance::mean_reward(int c, int a) const {
  int k = bid_grid();
  if (c < 1 || c > m_ || a < 1 || a > k)
    throw std::invalid_argument("context/action outside grid");
  if (a == 2 * c - 1) return 0.75 - (eps_[c - 1] + 1) / (4.0 * k);
  return 0.75 - std::abs(a + 0.5 - 2.0 * c) / (2.0 * k);
}

int LowerBoundInstance::context_at(long long t) const {
  return block_context(t, m_, horizon_);
}

std::vector<double> LowerBoundInstance::sample_reveal(int amin, Rng& rng) const {
  int k = bid_grid();
  if (amin < 1 || amin > k) throw std::invalid_argument("amin outside grid");
  std::vector<double> block;
  block.reserve(size_t(m_) * (k - amin + 1));
  for (int c = 1; c <= m_; ++c)
    for (int a = amin; a <= k; ++a)
      block.push_back(uniform01(rng) < mean_reward(c, a) ? 1.0 : 0.0);
  return block;
}

}  // namespace fpb
