#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace fpb {

struct EliminationResult {
  bool eliminated_any = false;
  // Times the monotone prune would have emptied a set and kept its largest
  // element instead. Zero on every on-model run; exposed so tests can assert
  // the guard stays cold.
  int rescues = 0;
};

struct ContextSweep {
  bool eliminated = false;
  bool rescued = false;
};

// One context's elimination step: first the monotone prune against the
// (already updated) previous context's minimum, then the confidence rule
//   drop a  iff  mean(c,a) < mean_max - radius(c,a_max) - radius(c,a)
// where mean_max is the max over the context's current survivors and a_max its
// argmax (ties: larger count, then smaller index; prefer_high_tie flips the
// final tie toward the larger index). radius(c,a) is the confidence radius of
// the pair; policies with shared per-action counts precompute it per action.
template <class MeanFn, class CountFn, class RadiusFn>
ContextSweep sweep_one_context(std::vector<int>& set, int c, int prev_min,
                               MeanFn&& mean, CountFn&& count,
                               RadiusFn&& radius,
                               bool prefer_high_tie = false) {
  ContextSweep result;
  if (set.front() < prev_min) {
    auto keep = std::lower_bound(set.begin(), set.end(), prev_min);
    if (keep == set.end()) {
      set.erase(set.begin(), set.end() - 1);
      result.rescued = true;
    } else {
      set.erase(set.begin(), keep);
    }
    result.eliminated = true;
  }

  int best = set.front();
  double best_mean = mean(c, best);
  long long best_count = count(c, best);
  for (std::size_t k = 1; k < set.size(); ++k) {
    int a = set[k];
    double m = mean(c, a);
    long long n = count(c, a);
    bool better = m > best_mean ||
                  (m == best_mean &&
                   (n > best_count || (n == best_count && prefer_high_tie)));
    if (better) {
      best = a;
      best_mean = m;
      best_count = n;
    }
  }

  double band = radius(c, best);
  auto out = std::remove_if(set.begin(), set.end(), [&](int a) {
    if (a == best) return false;
    double threshold = best_mean - band - radius(c, a);
    return mean(c, a) < threshold;
  });
  if (out != set.end()) {
    set.erase(out, set.end());
    result.eliminated = true;
  }
  return result;
}

// One elimination sweep over per-context active sets (0-based actions,
// ascending within each set), processing contexts in increasing order so each
// prune sees the previous context's updated minimum.
template <class MeanFn, class CountFn, class RadiusFn>
EliminationResult eliminate_actions_with_radius(
    std::vector<std::vector<int>>& active, MeanFn&& mean, CountFn&& count,
    RadiusFn&& radius, bool prefer_high_tie = false) {
  EliminationResult result;
  int prev_min = 0;  // sentinel context 0 keeps the full action set
  for (std::size_t c = 0; c < active.size(); ++c) {
    auto step = sweep_one_context(active[c], int(c), prev_min, mean, count,
                                  radius, prefer_high_tie);
    result.eliminated_any |= step.eliminated;
    result.rescues += step.rescued ? 1 : 0;
    prev_min = active[c].front();
  }
  return result;
}

// Radius band_scale / sqrt(count); band_scale bundles the gamma * log(...)
// factor so the same sweep serves every elimination policy.
template <class MeanFn, class CountFn>
EliminationResult eliminate_actions(std::vector<std::vector<int>>& active,
                                    MeanFn&& mean, CountFn&& count,
                                    double band_scale,
                                    bool prefer_high_tie = false) {
  auto radius = [&](int c, int a) {
    return band_scale / std::sqrt(double(count(c, a)));
  };
  return eliminate_actions_with_radius(active, mean, count, radius,
                                       prefer_high_tie);
}

// Number of future rounds that provably cannot trigger the confidence rule,
// so the sweep may be skipped for that long with an unchanged trajectory.
// Justification: a mean over n samples of rewards with range <= 2 moves by at
// most 2/(n+1) per new sample, so the widest (max - mean) gap grows by at most
// 4/(min_count+1) per round, while the band never drops below
// 2*band_scale/sqrt(u) at round u (no count can exceed u). The returned delta
// is the largest value with
//   max_gap + delta * 4/(min_count+1) <= 2*band_scale/sqrt(rounds_done+delta),
// capped at horizon - rounds_done.
inline long long mse_skip_window(double max_gap, long long min_count,
                                 long long rounds_done, long long horizon,
                                 double band_scale) {
  if (min_count < 1 || rounds_done < 1) return 0;
  auto safe = [&](long long delta) {
    double lhs = max_gap + 4.0 * double(delta) / double(min_count + 1);
    double rhs = 2.0 * band_scale / std::sqrt(double(rounds_done + delta));
    return lhs <= rhs;
  };
  long long cap = horizon > rounds_done ? horizon - rounds_done : 0;
  if (cap == 0 || !safe(1)) return 0;
  long long lo = 1, hi = cap;  // safe is monotone: true on [0, boundary]
  while (lo < hi) {
    long long mid = lo + (hi - lo + 1) / 2;
    if (safe(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace fpb
