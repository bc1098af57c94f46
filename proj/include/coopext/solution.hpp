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
 * \file coopext/solution.hpp
 *
 * \brief Welfare distributions built on the Pareto optimum and its prices.
 *
 * A permit allocation s̄ together with the optimal prices yields a welfare
 * vector whose total is always the Pareto total. Using the Nash emissions of
 * some coalition structure as s̄ gives a category-I distribution; using the
 * all-singleton Nash emissions gives the w-value.
 */

#ifndef COOPEXT_SOLUTION_HPP
#define COOPEXT_SOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/model.hpp"
#include "coopext/partition.hpp"
#include "coopext/pricing.hpp"

namespace coopext {

/// Pareto outcome and the prices that support it. Computed once and shared
/// by every distribution of the same game.
struct PlannerPoint {
  EquilibriumOutcome pareto;
  PriceSchedule prices;

  explicit PlannerPoint(const Game& game)
      : pareto(pareto_optimum(game)), prices(optimal_prices(game, pareto)) {}
};

struct WelfareAllocation {
  struct Basis {
    std::vector<double> emissions;   // Pareto emissions actually emitted
    std::vector<double> allocation;  // permits held before trading
    PriceSchedule schedule;
  };

  std::vector<double> values;
  Basis basis;

  double total() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
  }
};

/// Gross Pareto welfare plus transfers for the permit allocation s̄.
inline WelfareAllocation welfare_under_allocation(
    const Game& game, const PlannerPoint& planner,
    std::span<const double> allocation) {
  WelfareAllocation out;
  out.basis.emissions = planner.pareto.emissions;
  out.basis.allocation.assign(allocation.begin(), allocation.end());
  out.basis.schedule = planner.prices;
  const std::vector<double> moved = transfers(
      game, planner.prices, planner.pareto.emissions, allocation);
  out.values.resize(game.size());
  for (std::size_t i = 0; i < game.size(); ++i)
    out.values[i] = planner.pareto.gross_welfare[i] + moved[i];
  return out;
}

inline WelfareAllocation welfare_under_allocation(
    const Game& game, std::span<const double> allocation) {
  return welfare_under_allocation(game, PlannerPoint(game), allocation);
}

/// Initial permits: the all-singleton Nash emissions.
inline std::vector<double> w_ipa(const Game& game) {
  require_valid(game);
  return nash_equilibrium(game, CoalitionStructure::singletons(game.size()))
      .emissions;
}

inline WelfareAllocation category1_distribution(const Game& game,
                                                const PlannerPoint& planner,
                                                const CoalitionStructure& p) {
  const EquilibriumOutcome nash = nash_equilibrium(game, p);
  return welfare_under_allocation(game, planner, nash.emissions);
}

inline WelfareAllocation category1_distribution(const Game& game,
                                                const CoalitionStructure& p) {
  require_valid(game);
  return category1_distribution(game, PlannerPoint(game), p);
}

inline WelfareAllocation w_value(const Game& game, const PlannerPoint& planner) {
  return welfare_under_allocation(game, planner, w_ipa(game));
}

inline WelfareAllocation w_value(const Game& game) {
  require_valid(game);
  return w_value(game, PlannerPoint(game));
}

struct GammaCoreRow {
  Block coalition;
  double deviating_welfare = 0.0;  // sum over C of Nash welfare, outsiders singletons
  double candidate_welfare = 0.0;  // sum over C of the candidate
  double surplus = 0.0;            // candidate - deviating
};

struct GammaCoreReport {
  std::vector<GammaCoreRow> rows;
  double pareto_total = 0.0;
  double efficiency_gap = 0.0;     // sum candidate - pareto total
  bool member = false;

  const GammaCoreRow* find(const Block& coalition) const {
    for (const GammaCoreRow& row : rows)
      if (row.coalition == coalition) return &row;
    return nullptr;
  }
};

inline constexpr double kCoreTolerance = 1e-9;
inline constexpr std::size_t kMaxCoreAgents = 20;

/// Nonempty subsets of {0..n-1}, by size and then lexicographically.
inline std::vector<Block> all_coalitions(std::size_t n) {
  if (n < 1 || n > kMaxCoreAgents)
    throw SizeError("coalition enumeration supports 1.." +
                    std::to_string(kMaxCoreAgents) + " agents");
  std::vector<Block> out;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    Block c;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) c.push_back(i);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const Block& x, const Block& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

/// Checks the candidate against every deviating coalition C, where C's worth
/// is its Nash welfare when all outsiders act as singletons. Membership needs
/// efficiency, a strictly positive surplus for every proper C, and a
/// non-negative surplus for the grand coalition.
inline GammaCoreReport gamma_core_test(const Game& game,
                                       std::span<const double> candidate) {
  require_valid(game);
  const std::size_t n = game.size();
  if (candidate.size() != n)
    throw ArgumentError("candidate has " + std::to_string(candidate.size()) +
                        " entries, game has " + std::to_string(n) + " agents");

  GammaCoreReport report;
  report.pareto_total = pareto_optimum(game).total_welfare();
  report.efficiency_gap =
      std::accumulate(candidate.begin(), candidate.end(), 0.0) -
      report.pareto_total;

  const double scale = std::max(1.0, std::abs(report.pareto_total));
  bool member = std::abs(report.efficiency_gap) <= kCoreTolerance * scale;

  // Every singleton deviation maps to the same all-singleton structure.
  std::map<std::string, EquilibriumOutcome> solved;
  for (Block& coalition : all_coalitions(n)) {
    const CoalitionStructure structure = gamma_structure(coalition, n);
    const std::string key = structure.to_string();
    auto it = solved.find(key);
    if (it == solved.end())
      it = solved.emplace(key, nash_equilibrium(game, structure)).first;

    GammaCoreRow row;
    for (std::size_t i : coalition) {
      row.deviating_welfare += it->second.gross_welfare[i];
      row.candidate_welfare += candidate[i];
    }
    row.surplus = row.candidate_welfare - row.deviating_welfare;
    if (coalition.size() < n) {
      member = member && row.surplus > kCoreTolerance;
    } else {
      member = member && row.surplus >= -kCoreTolerance * scale;
    }
    row.coalition = std::move(coalition);
    report.rows.push_back(std::move(row));
  }
  report.member = member;
  return report;
}

/// Permit allocation that realises the welfare vector `target` when total
/// permits are `total_permits`. The result always sums to total_permits.
inline std::vector<double> allocation_from_welfare(
    const Game& game, const PlannerPoint& planner,
    std::span<const double> target, double total_permits) {
  const std::size_t n = game.size();
  if (target.size() != n)
    throw ArgumentError("welfare target does not match the agent count");
  const double pareto_total = planner.pareto.total_welfare();
  const double gap =
      std::accumulate(target.begin(), target.end(), 0.0) - pareto_total;
  if (std::abs(gap) > kCoreTolerance * std::max(1.0, std::abs(pareto_total)))
    throw InfeasibleError("welfare target sums to " +
                          std::to_string(pareto_total + gap) +
                          " but the Pareto total is " +
                          std::to_string(pareto_total));
  const PriceSchedule& prices = planner.prices;
  if (prices.t == 0.0)
    throw InfeasibleError("permit price is zero; welfare cannot be steered");

  const std::vector<double>& s = planner.pareto.emissions;
  const double emitted = std::accumulate(s.begin(), s.end(), 0.0);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AgentModel& agent = game.agents[i];
    const double gross = agent.revenue.value(s[i]) -
                         agent.damage.value(planner.pareto.total_stock);
    out[i] = (target[i] - gross - prices.T[i] * (emitted - total_permits) +
              prices.t_bar[i]) /
                 prices.t +
             s[i];
  }
  return out;
}

inline std::vector<double> allocation_from_welfare(
    const Game& game, std::span<const double> target, double total_permits) {
  require_valid(game);
  return allocation_from_welfare(game, PlannerPoint(game), target,
                                 total_permits);
}

}  // namespace coopext

#endif  // COOPEXT_SOLUTION_HPP
