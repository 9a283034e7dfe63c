#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpb/harness/runner.hpp"
#include "fpb/inventory/inventory.hpp"
#include "fpb/rng.hpp"
#include "oracle_utils.hpp"

using namespace fpb;

TEST_CASE("newsvendor reward worked examples") {
  CHECK(inventory_reward(0.5, 0.8, 1.0, 1.0) == 0.5);  // sold out, no holdover
  CHECK(inventory_reward(0.8, 0.5, 1.0, 1.0) ==
        doctest::Approx(0.2).epsilon(1e-12));  // 0.5 sold, 0.3 held
  CHECK(inventory_reward(0.4, 0.4, 3.0, 0.7) == 3.0 * 0.4);
  CHECK(inventory_reward(1.0, 0.0, 2.0, 0.5) == -0.5);
}

TEST_CASE("downward reveal reconstructs the reward of any smaller order") {
  // Played 0.8, observed min(0.8, d) = 0.5, so d = 0.5.
  CHECK(downward_reveal(0.3, 0.8, 0.5, 1.0, 1.0) == 0.3);
  CHECK(downward_reveal(0.7, 0.8, 0.5, 1.0, 1.0) ==
        doctest::Approx(0.3).epsilon(1e-12));
  // Query at the played level itself is allowed and matches the raw reward.
  CHECK(downward_reveal(0.8, 0.8, 0.5, 1.0, 1.0) ==
        inventory_reward(0.8, 0.5, 1.0, 1.0));
  CHECK_THROWS_AS(downward_reveal(0.9, 0.8, 0.5, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("downward reveal equals the true reward, bit for bit") {
  Rng rng(derive_seed(41, 0));
  for (int rep = 0; rep < 2000; ++rep) {
    const double played = uniform01(rng);
    const double query = played * uniform01(rng);
    const double demand = uniform01(rng);
    const double price = 0.5 + 2.0 * uniform01(rng);
    const double holding = 2.0 * uniform01(rng);
    const double observed = std::min(played, demand);
    CHECK(downward_reveal(query, played, observed, price, holding) ==
          inventory_reward(query, demand, price, holding));
  }
}

TEST_CASE("expected reward under uniform demand is a - a^2 at unit prices") {
  for (double a : {0.1, 0.25, 0.5, 0.8, 1.0}) {
    CHECK(expected_inventory_reward(a, BidDistribution::uniform(), 1.0, 1.0) ==
          doctest::Approx(a - a * a).epsilon(1e-9));
  }
  // Two-sided check against Monte Carlo on a second family.
  const auto d = BidDistribution::truncated_normal(0.6, 0.2);
  Rng rng(derive_seed(42, 0));
  double mc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i)
    mc += inventory_reward(0.55, d.sample(rng), 1.5, 0.5);
  CHECK(expected_inventory_reward(0.55, d, 1.5, 0.5) ==
        doctest::Approx(mc / n).epsilon(0.01));
}

TEST_CASE("environment reports the censored sale, never the demand") {
  InventoryEnv env(BidDistribution::uniform(), 1.0, 1.0, derive_seed(43, 0));
  for (int t = 0; t < 200; ++t) {
    const auto step = env.step(0.3);
    CHECK(step.observed == std::min(0.3, step.demand));
  }
  CHECK_THROWS_AS(InventoryEnv(BidDistribution::uniform(), 0.0, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(InventoryEnv(BidDistribution::uniform(), 1.0, -0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("a fresh policy orders the largest level and guards its rounds") {
  InventoryMsePolicy p(100, 10, 3.0, 1.0, 1.0);
  CHECK(p.level_grid().point(9) == 1.0);
  const int a = p.choose();
  CHECK(a == 9);
  CHECK_THROWS_AS(p.choose(), std::logic_error);          // feedback pending
  CHECK_THROWS_AS(p.observe(1.5), std::invalid_argument); // above the order
  p.observe(0.62);
  CHECK_THROWS_AS(p.observe(0.5), std::logic_error);      // nothing pending
  CHECK(p.count(9) == 1);
  CHECK(p.count(0) == 1);  // every smaller level learned too
}

TEST_CASE("deterministic demand pins the empirical argmax exactly") {
  const long long horizon = 40000;
  const int k = 200;
  InventoryMsePolicy p(horizon, k, 0.3, 1.0, 1.0);
  for (long long t = 0; t < horizon; ++t) {
    const double level = p.level_grid().point(p.choose());
    p.observe(std::min(level, 0.37));
  }
  // Reward is a for a <= 0.37 and 0.74 - a above: unique grid optimum at 0.37.
  CHECK(p.level_grid().point(p.empirical_best()) == doctest::Approx(0.37));
  for (int a : p.active_set()) {
    CHECK(std::abs(p.level_grid().point(a) - 0.37) <= 0.05);
    const double level = p.level_grid().point(a);
    CHECK(p.empirical_mean(a) ==
          doctest::Approx(std::min(level, 0.74 - level)).epsilon(1e-12));
  }
}

TEST_CASE("empirical means track the analytic curve under uniform demand") {
  const long long horizon = 20000;
  InventoryMsePolicy p(horizon, 50, 3.0, 1.0, 1.0);
  InventoryEnv env(BidDistribution::uniform(), 1.0, 1.0,
                   derive_seed(44, 0, kStreamMarket));
  for (long long t = 0; t < horizon; ++t)
    p.observe(env.step(p.level_grid().point(p.choose())).observed);
  for (int a : p.active_set()) {
    const double level = p.level_grid().point(a);
    CHECK(p.count(a) == horizon);
    CHECK(std::abs(p.empirical_mean(a) - (level - level * level)) <= 0.012);
  }
}

TEST_CASE("long uniform run lands the argmax next to the newsvendor optimum") {
  InventoryConfig cfg;
  cfg.horizon = 100000;
  cfg.seed = 45;
  const auto tr = run_inventory_episode(cfg, 0);
  // p = h = 1 on uniform demand: maximize a - a^2, optimum 1/2, and the
  // common demand draws make neighbor comparisons nearly noiseless.
  CHECK(std::abs(tr.final_level - 0.5) <= 2.0 / std::sqrt(double(cfg.horizon)));
  CHECK(tr.cum_regret.back() > 0.0);
  CHECK(std::is_sorted(tr.cum_regret.begin(), tr.cum_regret.end()));
}

TEST_CASE("cost-minimization regret equals reward regret per round") {
  InventoryConfig cfg;
  cfg.horizon = 20000;
  cfg.demand_spec = "truncnorm:0.55:0.25";
  cfg.price = 1.4;
  cfg.holding = 0.6;
  cfg.seed = 46;
  const auto tr = run_inventory_episode(cfg, 3);
  REQUIRE(tr.cum_regret.size() == tr.cum_aux.size());
  for (std::size_t i = 0; i < tr.cum_regret.size(); ++i)
    CHECK(std::abs(tr.cum_regret[i] - tr.cum_aux[i]) <= 1e-9);
}
