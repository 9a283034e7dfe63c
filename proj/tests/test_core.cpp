#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fpb/distribution.hpp"
#include "fpb/grid.hpp"
#include "fpb/rewards.hpp"
#include "fpb/rng.hpp"
#include "oracle_utils.hpp"

using namespace fpb;
using namespace fpb::testing;

TEST_CASE("instantaneous reward: wins, losses, ties") {
  CHECK(instantaneous_reward(0.8, 0.5, 0.6) == 0.0);
  CHECK(instantaneous_reward(0.8, 0.5, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  // tie goes to the bidder
  CHECK(instantaneous_reward(0.8, 0.5, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
  // overbidding wins at a loss
  CHECK(instantaneous_reward(0.2, 0.5, 0.4) == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK_THROWS_AS(instantaneous_reward(1.2, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(instantaneous_reward(0.5, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(instantaneous_reward(0.5, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("expected reward closed forms") {
  auto u = BidDistribution::uniform();
  CHECK(expected_reward(1.0, 0.5, u) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(expected_reward(0.3, 0.3, u) == 0.0);
  auto g1 = BidDistribution::two_point(0.1, 1);
  CHECK(expected_reward(1.0, 1.0 / 3.0, g1) ==
        doctest::Approx((1.0 + 2 * 0.1) / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(expected_reward(1.1, 0.5, u), std::invalid_argument);
}

TEST_CASE("expected reward matches Monte Carlo of realized reward") {
  Rng rng(derive_seed(11, 0));
  struct Case {
    BidDistribution g;
    double v, b;
  } cases[] = {
      {BidDistribution::uniform(), 0.9, 0.4},
      {BidDistribution::two_point(0.1, 1), 1.0, 0.5},
      {BidDistribution::piecewise({0.2, 0.5, 0.9}, {0.3, 0.5, 0.2}), 0.8, 0.55},
      {BidDistribution::truncated_normal(0.4, 0.3), 0.7, 0.5},
  };
  for (const auto& c : cases) {
    auto stats = mc_mean(100000, [&] {
      return instantaneous_reward(c.v, c.b, c.g.sample(rng));
    });
    double want = expected_reward(c.v, c.b, c.g);
    CHECK(std::abs(stats.mean - want) <= 3 * stats.se + 1e-12);
  }
}

TEST_CASE("oracle best bid on the unit grid") {
  auto u = BidDistribution::uniform();
  GridSpec grid(GridStyle::kUnit, 100);
  auto best = oracle_best_bid(1.0, u, grid);
  CHECK(best.bid == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(best.reward == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("oracle best bid agrees with brute-force scan everywhere") {
  Rng rng(derive_seed(12, 0));
  std::vector<BidDistribution> gs = {
      BidDistribution::uniform(),
      BidDistribution::two_point(0.07, 2),
      BidDistribution::random_piecewise(rng, 6),
      BidDistribution::truncated_normal(0.6, 0.25),
  };
  for (const auto& g : gs) {
    for (GridStyle style : {GridStyle::kUnit, GridStyle::kOffset}) {
      GridSpec grid(style, 37);
      for (int k = 0; k <= 50; ++k) {
        double v = k / 50.0;
        auto got = oracle_best_bid(v, g, grid);
        auto want = naive_best_bid(v, g, grid);
        CHECK(got.index == want.index);
        CHECK(got.reward == want.reward);
      }
    }
  }
}

TEST_CASE("oracle best bid at zero value") {
  auto u = BidDistribution::uniform();
  // Unit grid has no zero bid: the least-bad point is the smallest one.
  auto unit = oracle_best_bid(0.0, u, GridSpec(GridStyle::kUnit, 100));
  CHECK(unit.bid == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(unit.reward == doctest::Approx(-1e-4).epsilon(1e-12));
  // Offset grid contains 0, where the reward is exactly 0.
  auto off = oracle_best_bid(0.0, u, GridSpec(GridStyle::kOffset, 100));
  CHECK(off.bid == 0.0);
  CHECK(off.reward == 0.0);
}

TEST_CASE("oracle best bid on the two-point family") {
  auto g2 = BidDistribution::two_point(0.1, 2);
  GridSpec fine(GridStyle::kUnit, 3000);  // contains 1/3 and 2/3 exactly
  auto best = oracle_best_bid(1.0, g2, fine);
  CHECK(best.bid == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(best.reward == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  auto g1 = BidDistribution::two_point(0.1, 1);
  auto best1 = oracle_best_bid(1.0, g1, fine);
  CHECK(best1.bid == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(best1.reward == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("oracle trajectory reward") {
  auto u = BidDistribution::uniform();
  GridSpec grid(GridStyle::kUnit, 100);
  CHECK(oracle_trajectory_reward({1.0, 1.0}, u, grid) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oracle_trajectory_reward({}, u, grid) == 0.0);
  GridSpec off(GridStyle::kOffset, 100);
  CHECK(oracle_trajectory_reward({0.0, 0.0, 0.0}, u, off) == 0.0);
}

TEST_CASE("value quantization") {
  CHECK(quantize_value(0.41, 10) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(quantize_value(0.5, 10) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(quantize_value(0.0, 10) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(quantize_value(1.0, 7) == 1.0);
  CHECK_THROWS_AS(quantize_value(1.2, 10), std::invalid_argument);
  CHECK_THROWS_AS(quantize_value(0.5, 0), std::invalid_argument);

  // Exactness: grid points map to themselves, values just above move up.
  Rng rng(derive_seed(13, 0));
  for (int rep = 0; rep < 2000; ++rep) {
    int m = 1 + int(rng() % 500);
    int i = 1 + int(rng() % m);
    double v = double(i) / m;
    CHECK(quantize_index(v, m) == i);
    double up = std::nextafter(v, 2.0);
    if (up <= 1.0) CHECK(quantize_index(up, m) == std::min(i + 1, m));
  }

  // Definition check: smallest grid point >= v.
  for (int rep = 0; rep < 2000; ++rep) {
    int m = 1 + int(rng() % 300);
    double v = uniform01(rng);
    int i = quantize_index(v, m);
    CHECK(double(i) / m >= v);
    if (i > 1) CHECK(double(i - 1) / m < v);
  }
}

TEST_CASE("quantization regret gap") {
  CHECK(quantization_regret_gap(100, 100, 10000) ==
        doctest::Approx(300.0).epsilon(1e-15));
  CHECK(quantization_regret_gap(50, 200, 1000) ==
        doctest::Approx((2.0 / 50 + 1.0 / 200) * 1000).epsilon(1e-15));
  CHECK_THROWS_AS(quantization_regret_gap(0, 10, 10), std::invalid_argument);
}

TEST_CASE("grid spec points and interval edges") {
  GridSpec unit(GridStyle::kUnit, 4);
  CHECK(unit.point(0) == 0.25);
  CHECK(unit.point(3) == 1.0);
  GridSpec off(GridStyle::kOffset, 4);
  CHECK(off.point(0) == 0.0);
  CHECK(off.point(3) == 0.75);
  CHECK(off.upper_edge(3) == 1.0);
  CHECK(off.upper_edge(0) == 0.25);
  for (int i = 0; i < 4; ++i) {
    CHECK(unit.ceil_index(unit.point(i)) == i);
    CHECK(off.ceil_index(off.point(i)) == i);
  }
  CHECK(off.ceil_index(0.26) == 2);
  CHECK_THROWS_AS(GridSpec(GridStyle::kUnit, 0), std::invalid_argument);
}

TEST_CASE("samplers match their CDFs (Kolmogorov)") {
  Rng rng(derive_seed(14, 0));
  std::vector<BidDistribution> gs = {
      BidDistribution::uniform(),
      BidDistribution::two_point(0.1, 1),
      BidDistribution::piecewise({0.1, 0.4, 0.7, 0.95}, {0.2, 0.3, 0.4, 0.1}),
      BidDistribution::truncated_normal(0.3, 0.2),
  };
  for (const auto& g : gs) {
    std::vector<double> samples(100000);
    for (auto& s : samples) s = g.sample(rng);
    CHECK(kolmogorov_distance(std::move(samples), g) <= 0.01);
  }
}

TEST_CASE("distribution cdf sanity and parameter validation") {
  auto g1 = BidDistribution::two_point(0.1, 1);
  CHECK(g1.cdf(0.0) == 0.0);
  CHECK(g1.cdf(1.0 / 3.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(g1.cdf(0.5) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(g1.cdf(1.0) == 1.0);
  auto tn = BidDistribution::truncated_normal(0.4, 0.3);
  CHECK(tn.cdf(0.0) == 0.0);
  CHECK(tn.cdf(1.0) == 1.0);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    double c = tn.cdf(i / 100.0);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK_THROWS_AS(BidDistribution::two_point(0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(BidDistribution::two_point(0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(BidDistribution::piecewise({0.5, 0.2}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BidDistribution::piecewise({0.2, 0.5}, {0.5, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BidDistribution::truncated_normal(0.5, 0.0),
                  std::invalid_argument);
}

TEST_CASE("distribution spec strings round-trip") {
  Rng rng(derive_seed(15, 0));
  std::vector<BidDistribution> gs = {
      BidDistribution::uniform(),
      BidDistribution::two_point(0.05, 2),
      BidDistribution::random_piecewise(rng, 5),
      BidDistribution::truncated_normal(0.45, 0.31),
  };
  for (const auto& g : gs) {
    auto back = BidDistribution::parse(g.spec_string());
    CHECK(back.spec_string() == g.spec_string());
    for (int i = 0; i <= 20; ++i) {
      double b = i / 20.0;
      CHECK(back.cdf(b) == doctest::Approx(g.cdf(b)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(BidDistribution::parse("gaussian:0:1"), std::invalid_argument);
  CHECK_THROWS_AS(BidDistribution::parse("uniform:2"), std::invalid_argument);
}

TEST_CASE("partial CDF integrals") {
  auto u = BidDistribution::uniform();
  CHECK(u.integral_cdf(0.8) == doctest::Approx(0.32).epsilon(1e-15));
  auto pw = BidDistribution::piecewise({0.2, 0.6}, {0.5, 0.5});
  for (double a : {0.1, 0.3, 0.6, 0.9, 1.0}) {
    CHECK(pw.integral_cdf(a) ==
          doctest::Approx(riemann_integral_cdf(pw, a)).epsilon(1e-4));
  }
  auto tn = BidDistribution::truncated_normal(0.5, 0.25);
  for (double a : {0.2, 0.5, 0.8, 1.0}) {
    CHECK(tn.integral_cdf(a) ==
          doctest::Approx(riemann_integral_cdf(tn, a)).epsilon(1e-6));
  }
}

TEST_CASE("optimal bid is monotone in the value") {
  Rng rng(derive_seed(16, 0));
  std::vector<BidDistribution> gs = {
      BidDistribution::uniform(),
      BidDistribution::two_point(0.12, 1),
      BidDistribution::random_piecewise(rng, 9),
      BidDistribution::random_piecewise(rng, 3),
      BidDistribution::truncated_normal(0.5, 0.15),
  };
  int violations = 0;
  for (const auto& g : gs) {
    for (GridStyle style : {GridStyle::kUnit, GridStyle::kOffset}) {
      GridSpec grid(style, 64);
      int prev = 0;
      for (int k = 0; k <= 256; ++k) {
        int idx = oracle_best_bid(k / 256.0, g, grid).index;
        if (idx < prev) ++violations;
        prev = idx;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("quantizing values and bids costs at most (2/M + 1/K) per round") {
  Rng rng(derive_seed(17, 0));
  const int m = 12, k = 17;
  GridSpec bid_grid(GridStyle::kUnit, k);
  GridSpec fine(GridStyle::kOffset, 10 * k);  // stand-in for the continuum
  for (int inst = 0; inst < 3; ++inst) {
    auto g = BidDistribution::random_piecewise(rng, 4 + 3 * inst);
    const long long t_max = 300;
    double total_gap = 0.0;
    for (long long t = 0; t < t_max; ++t) {
      double v = uniform01(rng);
      double best_cont = oracle_best_bid(v, g, fine).reward;
      double best_grid = oracle_best_bid(quantize_value(v, m), g, bid_grid).reward;
      total_gap += best_cont - best_grid;
    }
    CHECK(total_gap <= quantization_regret_gap(m, k, t_max));
  }
}
