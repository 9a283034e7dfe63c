#include "fpb/policies/generic_mse.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fpb/policies/mse_rules.hpp"

namespace fpb {

GenericMsePolicy::GenericMsePolicy(long long horizon, int contexts, int actions,
                                   double gamma)
    : actions_(actions),
      band_scale_(gamma *
                  std::log(double(actions) * contexts * double(horizon))),
      active_(contexts),
      mean_(contexts, std::vector<long double>(actions, 0.0L)),
      count_(contexts, std::vector<long long>(actions, 0)) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (contexts < 1 || actions < 1)
    throw std::invalid_argument("need at least one context and action");
  if (gamma <= 0) throw std::invalid_argument("gamma must be > 0");
  for (auto& set : active_) {
    set.resize(actions);
    std::iota(set.begin(), set.end(), 0);
  }
}

int GenericMsePolicy::choose(int context) {
  if (pending_action_ >= 0)
    throw std::logic_error("choose called with an observation pending");
  if (context < 0 || context >= num_contexts())
    throw std::invalid_argument("context out of range");
  pending_action_ = active_[context].front();
  return pending_action_;
}

void GenericMsePolicy::observe(const RevealBlock& block) {
  if (pending_action_ < 0)
    throw std::logic_error("observe called before choose");
  if (block.min_action != pending_action_ ||
      int(block.rewards.size()) != num_contexts())
    throw std::invalid_argument("reveal block has the wrong shape");
  int played = pending_action_;
  pending_action_ = -1;

  for (int c = 0; c < num_contexts(); ++c) {
    if (int(block.rewards[c].size()) != actions_ - played)
      throw std::invalid_argument("reveal block has the wrong shape");
    for (int a = played; a < actions_; ++a) {
      long long n = count_[c][a];
      mean_[c][a] = (long double)(n) / (n + 1) * mean_[c][a] +
                    (long double)(block.rewards[c][a - played]) / (n + 1);
      count_[c][a] = n + 1;
    }
  }

  auto mean = [&](int c, int a) { return double(mean_[c][a]); };
  auto count = [&](int c, int a) { return count_[c][a]; };
  rescues_ += eliminate_actions(active_, mean, count, band_scale_).rescues;
}

double GenericMsePolicy::empirical_mean(int context, int action) const {
  return double(mean_[context][action]);
}

long long GenericMsePolicy::count(int context, int action) const {
  return count_[context][action];
}

}  // namespace fpb
