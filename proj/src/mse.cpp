#include "fpb/policies/mse.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fpb/policies/mse_rules.hpp"

namespace fpb {

MsePolicy::MsePolicy(long long horizon, int value_grid, int bid_grid,
                     double gamma, bool lazy_sweeps)
    : values_(GridStyle::kUnit, value_grid),
      bids_(GridStyle::kUnit, bid_grid),
      horizon_(horizon),
      band_scale_(gamma *
                  std::log(double(bid_grid) * value_grid * double(horizon))),
      lazy_(lazy_sweeps),
      active_(value_grid),
      min_active_(value_grid, 0),
      n_start_(bid_grid, 0),
      hit_start_(bid_grid, 0),
      n_(bid_grid, 0),
      hits_(bid_grid, 0),
      dh_(bid_grid, 0.0),
      dn_(bid_grid, 0.0),
      rad_(bid_grid, 0.0),
      phat_(bid_grid, 0.0),
      inv_(bid_grid, 0.0),
      rr_(bid_grid, 0.0),
      cm_(bid_grid, 0.0),
      cs_(bid_grid, 0.0),
      next_check_(value_grid, 1) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (gamma <= 0) throw std::invalid_argument("gamma must be > 0");
  for (auto& set : active_) {
    set.resize(bid_grid);
    std::iota(set.begin(), set.end(), 0);
  }
}

int MsePolicy::choose(double value) {
  if (pending_action_ >= 0)
    throw std::logic_error("choose called with an observation pending");
  int c = quantize_index(value, values_.size()) - 1;
  pending_action_ = min_active_[c];
  return pending_action_;
}

void MsePolicy::observe(const CensoredOutcome& outcome) {
  if (pending_action_ < 0)
    throw std::logic_error("observe called before choose");
  int played = pending_action_;
  pending_action_ = -1;

  n_start_[played] += 1;
  if (outcome.won) {
    hit_start_[played] += 1;
  } else {
    if (!outcome.highest_competing_bid)
      throw std::invalid_argument("loss outcome is missing the competing bid");
    int first_covering = bids_.ceil_index(*outcome.highest_competing_bid);
    if (first_covering < played) first_covering = played;
    hit_start_[first_covering] += 1;
  }
  dirty_ = true;
  ++rounds_;

  if (!lazy_) {
    sweep_due_contexts(true);
  } else if (rounds_ >= earliest_due_) {
    sweep_due_contexts(false);
  }
}

void MsePolicy::materialize() const {
  if (!dirty_) return;
  long long n = 0, h = 0;
  for (int a = 0; a < bids_.size(); ++a) {
    n += n_start_[a];
    h += hit_start_[a];
    n_[a] = n;
    hits_[a] = h;
  }
  dirty_ = false;
}

void MsePolicy::refresh_scratch() {
  materialize();
  for (int a = 0; a < bids_.size(); ++a) {
    dh_[a] = double(hits_[a]);
    dn_[a] = double(n_[a]);
    rad_[a] = band_scale_ / std::sqrt(dn_[a]);  // +inf while n_a == 0
    phat_[a] = n_[a] > 0 ? dh_[a] / dn_[a] : 0.0;
    inv_[a] = 1.0 / dn_[a];
    rr_[a] = 0.5 * rad_[a] * inv_[a];
  }
}

// Examine every context whose quiet window expired or whose front fell below
// the previous context's (possibly just raised) minimum; with `all` set,
// examine every context unconditionally. Skipped contexts are provably
// untouched: their certificate still covers this round, and the prune is a
// no-op while the previous minimum is unchanged, so the resulting state
// matches a full per-round sweep exactly.
void MsePolicy::sweep_due_contexts(bool all) {
  refresh_scratch();
  auto mean = [&](int c, int a) {
    return (values_.point(c) - bids_.point(a)) * dh_[a] / dn_[a];
  };
  auto count = [&](int, int a) { return n_[a]; };
  auto radius = [&](int, int a) { return rad_[a]; };

  long long soon = horizon_ + 1;
  int prev_min = 0;  // sentinel context 0 keeps the full action set
  for (int c = 0; c < values_.size(); ++c) {
    auto& set = active_[c];
    if (all || rounds_ >= next_check_[c] || set.front() < prev_min) {
      ++sweeps_;
      const std::size_t before = set.size();
      auto step = sweep_one_context(set, c, prev_min, mean, count, radius);
      eliminations_ += static_cast<long long>(before - set.size());
      rescues_ += step.rescued ? 1 : 0;
      min_active_[c] = set.front();
      next_check_[c] =
          rounds_ + 1 + (step.eliminated || !lazy_ ? 0 : context_window(c));
    }
    if (next_check_[c] < soon) soon = next_check_[c];
    prev_min = set.front();
  }
  earliest_due_ = soon;
}

// Sufficient condition for the next delta rounds to eliminate nothing in
// context c: arm b can only knock out arm a at an intermediate check if
//   mean_b + drift_b - radius_b  >  mean_a - drift_a + radius_a
// with drift_x <= delta/(n_x+delta) (each mean is coef * phat, |coef| < 1, and
// phat moves at most j/(n+j) after j more samples) and every future radius at
// least band_scale/sqrt(n_x+delta). Both terms are relaxed to linear bounds
// that reuse per-arm scratch instead of a sqrt per arm: drift <= delta/n and
// radius >= max(0, rad * (1 - delta/(2n))) via 1/sqrt(1+x) >= 1 - x/2, which
// only tightens the certificate and costs almost nothing for delta << n.
// Checking the largest raised side against each arm's lowered side certifies
// the whole window; a 1e-12 slack absorbs evaluation noise on the conservative
// side. Counts are all at least one whenever this runs (round one plays action
// zero, and every count aggregates actions below it), so the scratch terms are
// finite. A rarely-played arm's fat radius cancels its worst-case drift here,
// so the window scales with the live pairs' sample counts rather than the
// smallest count, and each context's window is set by its own closest pair
// only. When margin is non-null the scan always completes and reports the
// smallest slack min(down - threat), which quiet verdicts compare against the
// 1e-12 floor.
bool MsePolicy::context_quiet(int c, long long delta, double* margin) {
  const auto& set = active_[c];
  const double inf = std::numeric_limits<double>::infinity();
  if (margin) *margin = inf;
  if (set.size() < 2) return true;
  const double d = double(delta);
  const double vc = values_.point(c);
  double hi1 = -inf, hi2 = -inf;
  int arg = -1;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const int a = set[i];
    const double floor_rad = rad_[a] - d * rr_[a];
    const double shift = d * inv_[a] - (floor_rad > 0.0 ? floor_rad : 0.0);
    const double m = (vc - bids_.point(a)) * phat_[a];
    cm_[i] = m;
    cs_[i] = shift;
    const double up = m + shift;
    if (up > hi1) {
      hi2 = hi1;
      hi1 = up;
      arg = int(i);
    } else if (up > hi2) {
      hi2 = up;
    }
  }
  double slack = inf;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double down = cm_[i] - cs_[i];
    const double threat = int(i) == arg ? hi2 : hi1;
    const double gap = down - threat;
    if (!margin) {
      if (!(gap >= 1e-12)) return false;
    } else if (gap < slack) {
      slack = gap;
    }
  }
  if (margin) {
    *margin = slack;
    return slack >= 1e-12;
  }
  return true;
}

// Largest certified-quiet stretch for one context. One completed pass at
// delta = 1 yields the binding pair's slack; dividing by the worst-case slack
// decay rate (two drifts plus the band shrink, all steepest at the context's
// smallest count, which sits at its minimum action) lands a candidate near the
// true boundary, and verification halves it on the rare overshoot.
long long MsePolicy::context_window(int c) {
  const long long cap = horizon_ - rounds_;
  if (cap < 1) return 0;
  double slack = 0.0;
  if (!context_quiet(c, 1, &slack)) return 0;
  if (cap == 1 || slack == std::numeric_limits<double>::infinity()) return cap;
  const int front = active_[c].front();
  const double decay = 2.0 * (inv_[front] + rr_[front]);
  double guess = 1.0 + slack / decay;
  if (guess > double(cap)) guess = double(cap);
  long long w = static_cast<long long>(guess);
  while (w > 1 && !context_quiet(c, w)) w /= 2;
  return w;
}

long long MsePolicy::observation_count(int action) const {
  materialize();
  return n_[action];
}

double MsePolicy::empirical_mean(int context, int action) const {
  materialize();
  if (n_[action] == 0) return 0.0;
  return (values_.point(context) - bids_.point(action)) * double(hits_[action]) /
         double(n_[action]);
}

}  // namespace fpb
