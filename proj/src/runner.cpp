#include "fpb/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "fpb/env/auction_env.hpp"
#include "fpb/env/lower_bound.hpp"
#include "fpb/env/two_point.hpp"
#include "fpb/env/value_schedule.hpp"
#include "fpb/inventory/inventory.hpp"
#include "fpb/policies/generic_mse.hpp"
#include "fpb/policies/mse_rules.hpp"
#include "fpb/rng.hpp"

namespace fpb {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<long long> effective_checkpoints(const std::vector<long long>& given,
                                             long long horizon) {
  return given.empty() ? default_checkpoints(horizon) : given;
}

}  // namespace

RegretTrace run_auction_episode(const ExperimentConfig& config,
                                const BidDistribution& market,
                                int replication) {
  const auto start = Clock::now();
  config.validate();
  PolicyConfig pc = config.policy;
  pc.horizon = config.horizon;
  const auto policy = make_policy(pc, &market);
  const GridSpec grid = policy->bid_grid();
  const int k = grid.size();
  std::vector<double> g(k);
  for (int i = 0; i < k; ++i) g[i] = market.cdf(grid.point(i));

  const std::uint64_t market_seed =
      derive_seed(config.seed, replication, kStreamMarket);
  AuctionEnv env(market, market_seed);
  ValueSchedule values = ValueSchedule::parse(config.values_spec, config.horizon);
  values.reset(derive_seed(config.seed, replication, kStreamValues));

  RegretTrace tr;
  tr.replication = replication;
  tr.seed = market_seed;
  tr.checkpoints = effective_checkpoints(config.checkpoints, config.horizon);

  double cum = 0.0, realized = 0.0, oracle = 0.0;
  double memo_value = std::numeric_limits<double>::quiet_NaN(), memo_best = 0.0;
  std::size_t next_ck = 0;
  for (long long t = 1; t <= config.horizon; ++t) {
    const double v = values.next();
    const int idx = policy->choose(v);
    const double bid = grid.point(idx);
    const auto step = env.step(bid);
    policy->observe(step.outcome);

    double best;
    if (v == memo_value) {
      best = memo_best;
    } else {
      best = (v - grid.point(0)) * g[0];
      for (int i = 1; i < k; ++i)
        best = std::max(best, (v - grid.point(i)) * g[i]);
      memo_value = v;
      memo_best = best;
    }
    // The max above ranges over the played index, so dr >= 0 holds exactly;
    // a violation means NaN leaked in, which must abort the episode.
    const double dr = best - (v - bid) * g[idx];
    if (!(dr >= 0.0))
      throw std::runtime_error("regret accounting failed at round " +
                               std::to_string(t) + " (market seed " +
                               std::to_string(market_seed) + ")");
    cum += dr;
    oracle += best;
    if (config.record_realized && step.outcome.won) realized += v - bid;
    if (next_ck < tr.checkpoints.size() && t == tr.checkpoints[next_ck]) {
      tr.cum_regret.push_back(cum);
      if (config.record_realized) tr.cum_aux.push_back(realized);
      ++next_ck;
    }
  }
  tr.oracle_total = oracle;
  tr.wall_seconds = seconds_since(start);
  return tr;
}

std::vector<RegretTrace> run_replications(
    int replications, const std::function<RegretTrace(int)>& episode) {
  if (replications < 1)
    throw std::invalid_argument("replications must be >= 1");
  std::vector<RegretTrace> traces(replications);
  std::vector<std::string> failures(replications);
  int workers = 1;
  if (const char* env = std::getenv("FPB_THREADS"))
    workers = std::max(1, std::atoi(env));
  workers = std::min(workers, replications);

  auto run_one = [&](int rep) {
    try {
      traces[rep] = episode(rep);
    } catch (const std::exception& e) {
      failures[rep] = e.what();
    } catch (...) {
      failures[rep] = "unknown error";
    }
  };

  if (workers <= 1) {
    for (int rep = 0; rep < replications; ++rep) run_one(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const int rep = next.fetch_add(1);
          if (rep >= replications) return;
          run_one(rep);
        }
      });
    for (auto& th : pool) th.join();
  }
  for (int rep = 0; rep < replications; ++rep)
    if (!failures[rep].empty())
      throw std::runtime_error("replication " + std::to_string(rep) +
                               " failed: " + failures[rep]);
  return traces;
}

std::vector<SummaryRow> summarize(const std::vector<RegretTrace>& traces,
                                  long long horizon) {
  std::vector<SummaryRow> rows;
  if (traces.empty()) return rows;
  const auto& ck = traces.front().checkpoints;
  for (const auto& tr : traces)
    if (tr.checkpoints != ck || tr.cum_regret.size() != ck.size())
      throw std::invalid_argument("traces disagree on checkpoints");
  const int n = int(traces.size());
  for (std::size_t k = 0; k < ck.size(); ++k) {
    double sum = 0.0;
    for (const auto& tr : traces) sum += tr.cum_regret[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& tr : traces)
      ss += (tr.cum_regret[k] - mean) * (tr.cum_regret[k] - mean);
    rows.push_back(
        {horizon, ck[k], mean, n > 1 ? std::sqrt(ss / (n - 1)) : 0.0, n});
  }
  return rows;
}

namespace {

RegretTrace run_lower_bound_exact(const LowerBoundInstance& inst,
                                  const LowerBoundConfig& cfg, Rng& reveal_rng,
                                  RegretTrace tr) {
  const int m = inst.value_grid(), k = inst.bid_grid();
  GenericMsePolicy policy(cfg.horizon, m, k, cfg.gamma);
  double cum = 0.0, oracle = 0.0;
  std::size_t next_ck = 0;
  for (long long t = 1; t <= cfg.horizon; ++t) {
    const int c = inst.context_at(t);
    const int a0 = policy.choose(c - 1);
    const auto flat = inst.sample_reveal(a0 + 1, reveal_rng);
    RevealBlock block;
    block.min_action = a0;
    block.rewards.resize(m);
    const std::ptrdiff_t width = k - a0;
    for (int cc = 0; cc < m; ++cc)
      block.rewards[cc].assign(flat.begin() + cc * width,
                               flat.begin() + (cc + 1) * width);
    policy.observe(block);
    const double best = inst.best_reward(c);
    cum += best - inst.mean_reward(c, a0 + 1);
    oracle += best;
    if (next_ck < tr.checkpoints.size() && t == tr.checkpoints[next_ck]) {
      tr.cum_regret.push_back(cum);
      ++next_ck;
    }
  }
  tr.oracle_total = oracle;
  return tr;
}

// Distributionally identical to the literal loop above: between sweeps the
// played action per context is pinned (the same skip-window certificate the
// MSE policy uses), so per-cell Bernoulli sums over a segment can be drawn as
// one binomial, and regret accrues linearly within a segment. Segments never
// straddle a context-block boundary.
RegretTrace run_lower_bound_fast(const LowerBoundInstance& inst,
                                 const LowerBoundConfig& cfg, Rng& reveal_rng,
                                 RegretTrace tr) {
  const int m = inst.value_grid(), k = inst.bid_grid();
  const long long horizon = cfg.horizon;
  const double band_scale =
      cfg.gamma * std::log(double(k) * m * double(horizon));
  std::vector<std::vector<int>> active(m);
  for (auto& set : active) {
    set.resize(k);
    std::iota(set.begin(), set.end(), 0);
  }
  std::vector<std::vector<long long>> succ(m, std::vector<long long>(k, 0));
  std::vector<long long> n(k, 0);
  const long long base = horizon / m;

  auto mean = [&](int c, int a) { return double(succ[c][a]) / double(n[a]); };
  auto count = [&](int, int a) { return n[a]; };

  double cum = 0.0, oracle = 0.0;
  std::size_t next_ck = 0;
  long long t = 0, next_sweep = 1;
  while (t < horizon) {
    const long long s = t + 1;
    const int c = inst.context_at(s);
    const long long block =
        std::min((s - 1) / base + 1, static_cast<long long>(m));
    const long long block_end = block == m ? horizon : block * base;
    const long long seg_end = std::min(block_end, next_sweep);
    const long long len = seg_end - t;
    const int a0 = active[c - 1].front();

    for (int cc = 1; cc <= m; ++cc)
      for (int a = a0; a < k; ++a) {
        std::binomial_distribution<long long> binom(len,
                                                    inst.mean_reward(cc, a + 1));
        succ[cc - 1][a] += binom(reveal_rng);
      }
    for (int a = a0; a < k; ++a) n[a] += len;

    const double best = inst.best_reward(c);
    const double gap = best - inst.mean_reward(c, a0 + 1);
    while (next_ck < tr.checkpoints.size() &&
           tr.checkpoints[next_ck] <= seg_end) {
      tr.cum_regret.push_back(cum + double(tr.checkpoints[next_ck] - t) * gap);
      ++next_ck;
    }
    cum += double(len) * gap;
    oracle += double(len) * best;
    t = seg_end;

    if (t >= next_sweep) {
      const auto result = eliminate_actions(active, mean, count, band_scale);
      if (result.eliminated_any) {
        next_sweep = t + 1;
      } else {
        double max_gap = 0.0;
        for (int cc = 0; cc < m; ++cc) {
          double lo = mean(cc, active[cc].front()), hi = lo;
          for (int a : active[cc]) {
            const double mm = mean(cc, a);
            lo = std::min(lo, mm);
            hi = std::max(hi, mm);
          }
          max_gap = std::max(max_gap, hi - lo);
        }
        const long long min_count = n[active[0].front()];
        next_sweep =
            t + 1 + mse_skip_window(max_gap, min_count, t, horizon, band_scale);
      }
    }
  }
  tr.oracle_total = oracle;
  return tr;
}

}  // namespace

RegretTrace run_lower_bound_episode(const LowerBoundConfig& cfg,
                                    int replication) {
  const auto start = Clock::now();
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const int m = cfg.value_grid > 0
                    ? cfg.value_grid
                    : LowerBoundInstance::default_value_grid(cfg.horizon);
  Rng instance_rng(derive_seed(cfg.seed, replication, kStreamInstance));
  const auto inst =
      LowerBoundInstance::with_random_eps(cfg.horizon, m, instance_rng);
  Rng reveal_rng(derive_seed(cfg.seed, replication, kStreamReveal));

  RegretTrace tr;
  tr.replication = replication;
  tr.seed = derive_seed(cfg.seed, replication, kStreamReveal);
  tr.checkpoints = effective_checkpoints(cfg.checkpoints, cfg.horizon);
  tr = cfg.exact ? run_lower_bound_exact(inst, cfg, reveal_rng, std::move(tr))
                 : run_lower_bound_fast(inst, cfg, reveal_rng, std::move(tr));
  tr.wall_seconds = seconds_since(start);
  return tr;
}

TwoPointResult run_two_point_pair(const PolicyConfig& policy, long long horizon,
                                  std::uint64_t seed,
                                  const std::vector<long long>& checkpoints,
                                  int replication) {
  const auto inst = two_point_env(horizon);
  const auto ck = effective_checkpoints(checkpoints, horizon);

  auto run_side = [&](const BidDistribution& g, double optimal) {
    const auto start = Clock::now();
    PolicyConfig pc = policy;
    pc.horizon = horizon;
    const auto pol = make_policy(pc, &g);
    const GridSpec grid = pol->bid_grid();
    const int k = grid.size();
    std::vector<double> gt(k);
    for (int i = 0; i < k; ++i) gt[i] = g.cdf(grid.point(i));
    const std::uint64_t market_seed =
        derive_seed(seed, replication, kStreamMarket);
    AuctionEnv env(g, market_seed);

    RegretTrace tr;
    tr.replication = replication;
    tr.seed = market_seed;
    tr.checkpoints = ck;
    double cum = 0.0;
    std::size_t next_ck = 0;
    for (long long t = 1; t <= horizon; ++t) {
      const int idx = pol->choose(1.0);
      const double bid = grid.point(idx);
      pol->observe(env.step(bid).outcome);
      double dr = optimal - (1.0 - bid) * gt[idx];
      if (dr < 0.0) {
        // The continuum optimum dominates every grid bid; only rounding dust
        // from an exact hit may dip below zero.
        if (dr < -1e-9)
          throw std::runtime_error("played reward exceeded the instance optimum");
        dr = 0.0;
      }
      cum += dr;
      if (next_ck < ck.size() && t == ck[next_ck]) {
        tr.cum_regret.push_back(cum);
        ++next_ck;
      }
    }
    tr.oracle_total = optimal * double(horizon);
    tr.wall_seconds = seconds_since(start);
    return tr;
  };

  TwoPointResult out;
  out.trace_g1 = run_side(inst.g1, inst.optimal_reward_g1());
  out.trace_g2 = run_side(inst.g2, inst.optimal_reward_g2());
  out.average_final_regret =
      0.5 * (out.trace_g1.cum_regret.back() + out.trace_g2.cum_regret.back());
  return out;
}

RegretTrace run_inventory_episode(const InventoryConfig& cfg, int replication) {
  const auto start = Clock::now();
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const BidDistribution demand = resolve_distribution(cfg.demand_spec, cfg.seed);
  InventoryMsePolicy policy(cfg.horizon, cfg.levels, cfg.gamma, cfg.price,
                            cfg.holding);
  const std::uint64_t env_seed = derive_seed(cfg.seed, replication, kStreamMarket);
  InventoryEnv env(demand, cfg.price, cfg.holding, env_seed);
  const GridSpec& grid = policy.level_grid();
  const int k = grid.size();
  std::vector<double> reward(k), cost(k);
  const double mean_demand = 1.0 - demand.integral_cdf(1.0);
  for (int a = 0; a < k; ++a) {
    const double level = grid.point(a);
    const double shortfall = demand.integral_cdf(level);  // E[(level - d)^+]
    reward[a] = cfg.price * (level - shortfall) - cfg.holding * shortfall;
    // Unsold stock plus lost margin: h E[(a-d)^+] + p E[(d-a)^+].
    cost[a] = cfg.holding * shortfall +
              cfg.price * (mean_demand - level + shortfall);
  }
  double best = reward[0], min_cost = cost[0];
  for (int a = 1; a < k; ++a) {
    best = std::max(best, reward[a]);
    min_cost = std::min(min_cost, cost[a]);
  }

  RegretTrace tr;
  tr.replication = replication;
  tr.seed = env_seed;
  tr.checkpoints = effective_checkpoints(cfg.checkpoints, cfg.horizon);
  double cum = 0.0, cum_cost = 0.0;
  std::size_t next_ck = 0;
  for (long long t = 1; t <= cfg.horizon; ++t) {
    const int a = policy.choose();
    const auto step = env.step(grid.point(a));
    policy.observe(step.observed);
    cum += best - reward[a];
    cum_cost += cost[a] - min_cost;
    if (next_ck < tr.checkpoints.size() && t == tr.checkpoints[next_ck]) {
      tr.cum_regret.push_back(cum);
      tr.cum_aux.push_back(cum_cost);
      ++next_ck;
    }
  }
  tr.oracle_total = best * double(cfg.horizon);
  tr.final_level = grid.point(policy.empirical_best());
  tr.wall_seconds = seconds_since(start);
  return tr;
}

}  // namespace fpb
