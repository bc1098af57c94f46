// Copyright 2026 The coopext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "coopext/equilibrium.hpp"
#include "coopext/pricing.hpp"
#include "support/reference_game.hpp"

namespace coopext {
namespace {

namespace ref = coopext::testing;

class PricingTest : public ::testing::Test {
 protected:
  Game game = ref::reference_game();
  EquilibriumOutcome pareto = pareto_optimum(game);
  PriceSchedule prices = optimal_prices(game, pareto);
  std::vector<double> w_ipa{ref::kSingletonEmissions.begin(), ref::kSingletonEmissions.end()};
};

TEST_F(PricingTest, SubsidiesAreMarginalDamagesAtParetoStock) {
  const std::vector<double> expected{0.904, 1.807, 2.711, 0.613};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(prices.T[i], expected[i], 5e-4);
    EXPECT_NEAR(prices.T[i], ref::kSubsidies[i], 1e-9);
    EXPECT_EQ(prices.t_bar[i], 0.0);
  }
}

TEST_F(PricingTest, PermitPriceIsSumOfSubsidies) {
  EXPECT_EQ(prices.t, std::accumulate(prices.T.begin(), prices.T.end(), 0.0));
  EXPECT_NEAR(prices.t, ref::kPermitPrice, 1e-9);
  EXPECT_NEAR(prices.t, 6.035, 5e-4);
}

TEST_F(PricingTest, NetPriceCondition) {
  for (double r : net_price_condition(game, prices, pareto.total_stock))
    EXPECT_LE(std::abs(r), 1e-9);
  // Others' marginal damage for agent 1: 4S + 6S + 3S^2.
  const double S = ref::kParetoStock;
  EXPECT_NEAR(prices.net_price(0), 10 * S + 3 * S * S, 1e-9);
  EXPECT_NEAR(prices.net_price(0), 5.131, 5e-4);

  PriceSchedule bumped = prices;
  bumped.t += 1.0;
  for (double r : net_price_condition(game, bumped, pareto.total_stock))
    EXPECT_NEAR(r, 1.0, 1e-12);
}

TEST_F(PricingTest, SingleAgentHasNoExternality) {
  const Game one = ref::single_agent_game();
  const PriceSchedule p = optimal_prices(one, pareto_optimum(one));
  EXPECT_EQ(p.t, p.T[0]);
  EXPECT_EQ(p.net_price(0), 0.0);
}

TEST_F(PricingTest, Transfer) {
  // 0.904 (0.452 - 1.380) + 6.035 (1.182 - 0.247)
  const double agent1 = transfer(game, prices, pareto.emissions, w_ipa, 0);
  EXPECT_NEAR(agent1, 4.805, 2e-3);
  EXPECT_NEAR(agent1, 4.80415306520243911, 1e-9);

  EXPECT_EQ(transfer(game, prices, pareto.emissions, pareto.emissions, 2), 0.0);

  PriceSchedule taxed = prices;
  taxed.t_bar[1] = 5.0;
  EXPECT_EQ(transfer(game, taxed, pareto.emissions, pareto.emissions, 1), -5.0);

  EXPECT_THROW(transfer(game, prices, pareto.emissions, std::vector<double>{1.0}, 0),
               ArgumentError);
  EXPECT_THROW(transfer(game, prices, pareto.emissions, w_ipa, 4), ArgumentError);
}

TEST_F(PricingTest, FiscalBalance) {
  EXPECT_NEAR(fiscal_balance(game, prices, pareto.emissions, w_ipa), 0.0, 1e-9);
  PriceSchedule taxed = prices;
  taxed.t_bar[0] = 1.0;
  EXPECT_NEAR(fiscal_balance(game, taxed, pareto.emissions, w_ipa), -1.0, 1e-9);
}

TEST_F(PricingTest, BalanceAndConservationForRandomAllocations) {
  std::mt19937_64 rng(42);
  const double total = pareto.total_welfare();
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> alloc = ref::random_vector(rng, 4, -1.0, 3.0);
    EXPECT_LE(std::abs(fiscal_balance(game, prices, pareto.emissions, alloc)), 1e-9);
    const std::vector<double> moved = transfers(game, prices, pareto.emissions, alloc);
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) sum += pareto.gross_welfare[i] + moved[i];
    EXPECT_NEAR(sum, total, 1e-9);
  }
}

TEST_F(PricingTest, WelfareIsLinearInPermits) {
  std::mt19937_64 rng(3);
  const double delta = 0.125;
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> alloc = ref::random_vector(rng, 4, 0.0, 2.0);
    for (std::size_t i = 0; i < 4; ++i) {
      const double base = transfer(game, prices, pareto.emissions, alloc, i);
      for (std::size_t k = 0; k < 4; ++k) {
        std::vector<double> more = alloc;
        more[k] += delta;
        const double slope =
            (transfer(game, prices, pareto.emissions, more, i) - base) / delta;
        if (k == i) {
          EXPECT_NEAR(slope, prices.t - prices.T[i], 1e-9);
          EXPECT_GT(slope, 0.0);
        } else {
          EXPECT_NEAR(slope, -prices.T[i], 1e-9);
          EXPECT_LT(slope, 0.0);
        }
      }
    }
  }
}

TEST_F(PricingTest, RejectsUnconvergedOutcome) {
  EquilibriumOutcome stale = pareto;
  stale.converged = false;
  EXPECT_THROW(optimal_prices(game, stale), ArgumentError);
}

}  // namespace
}  // namespace coopext
