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

/**
 * \file coopext/pricing.hpp
 *
 * \brief Permit prices that decentralise the Pareto optimum.
 *
 * Agent i holds s̄_i permits, emits s_i, buys or sells the difference at the
 * permit price t, and receives the subsidy rate T_i on every unit by which
 * total emissions exceed total permits:
 *
 *   transfer_i = T_i (sum s - sum s̄) + t (s̄_i - s_i) - t̄_i.
 *
 * Setting T_i = d_i'(S*), t = sum_i T_i and t̄_i = 0 makes every agent's
 * private first-order condition coincide with the planner's and makes the
 * transfers sum to zero for any permit allocation.
 */

#ifndef COOPEXT_PRICING_HPP
#define COOPEXT_PRICING_HPP

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/model.hpp"

namespace coopext {

struct PriceSchedule {
  double t = 0.0;              // permit price
  std::vector<double> T;       // per-agent subsidy rate
  std::vector<double> t_bar;   // per-agent fixed tax

  /// Price agent i effectively pays per unit of its own emission.
  double net_price(std::size_t i) const { return t - T.at(i); }
};

inline PriceSchedule optimal_prices(const Game& game,
                                    const EquilibriumOutcome& pareto) {
  if (!pareto.converged)
    throw ArgumentError("optimal prices need a converged Pareto outcome");
  if (pareto.emissions.size() != game.size())
    throw ArgumentError("Pareto outcome does not match the agent count");
  PriceSchedule schedule;
  schedule.T.resize(game.size());
  schedule.t_bar.assign(game.size(), 0.0);
  for (std::size_t i = 0; i < game.size(); ++i)
    schedule.T[i] = marginal_damage(game.agents[i], pareto.total_stock);
  schedule.t = std::accumulate(schedule.T.begin(), schedule.T.end(), 0.0);
  return schedule;
}

/// (t - T_i) - sum_{k != i} d_k'(S) per agent; zero when agent i's private
/// price equals the damage it inflicts on everybody else.
inline std::vector<double> net_price_condition(const Game& game,
                                               const PriceSchedule& schedule,
                                               double stock) {
  if (schedule.T.size() != game.size())
    throw ArgumentError("price schedule does not match the agent count");
  std::vector<double> md(game.size());
  for (std::size_t i = 0; i < game.size(); ++i)
    md[i] = marginal_damage(game.agents[i], stock);
  const double total = std::accumulate(md.begin(), md.end(), 0.0);
  std::vector<double> residual(game.size());
  for (std::size_t i = 0; i < game.size(); ++i)
    residual[i] = schedule.net_price(i) - (total - md[i]);
  return residual;
}

namespace detail {

inline void check_dimensions(const Game& game, const PriceSchedule& schedule,
                             std::span<const double> emissions,
                             std::span<const double> allocation) {
  const std::size_t n = game.size();
  if (schedule.T.size() != n || schedule.t_bar.size() != n ||
      emissions.size() != n || allocation.size() != n)
    throw ArgumentError("price schedule, emissions and allocation must all "
                        "have one entry per agent");
}

}  // namespace detail

inline double transfer(const Game& game, const PriceSchedule& schedule,
                       std::span<const double> emissions,
                       std::span<const double> allocation, std::size_t i) {
  detail::check_dimensions(game, schedule, emissions, allocation);
  if (i >= game.size()) throw ArgumentError("agent index out of range");
  const double excess =
      std::accumulate(emissions.begin(), emissions.end(), 0.0) -
      std::accumulate(allocation.begin(), allocation.end(), 0.0);
  return schedule.T[i] * excess + schedule.t * (allocation[i] - emissions[i]) -
         schedule.t_bar[i];
}

inline std::vector<double> transfers(const Game& game,
                                     const PriceSchedule& schedule,
                                     std::span<const double> emissions,
                                     std::span<const double> allocation) {
  std::vector<double> out(game.size());
  for (std::size_t i = 0; i < game.size(); ++i)
    out[i] = transfer(game, schedule, emissions, allocation, i);
  return out;
}

/// Sum of all transfers. Zero means taxes and subsidies balance.
inline double fiscal_balance(const Game& game, const PriceSchedule& schedule,
                             std::span<const double> emissions,
                             std::span<const double> allocation) {
  const std::vector<double> all = transfers(game, schedule, emissions, allocation);
  return std::accumulate(all.begin(), all.end(), 0.0);
}

}  // namespace coopext

#endif  // COOPEXT_PRICING_HPP
