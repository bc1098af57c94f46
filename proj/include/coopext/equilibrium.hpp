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
 * \file coopext/equilibrium.hpp
 *
 * \brief Nash equilibria under a coalition structure, and the Pareto optimum.
 *
 * Each block of the structure maximises the joint welfare of its members
 * taking the other blocks' emissions as given. At an interior optimum every
 * member equates its own marginal revenue with the block's marginal damage
 * sum_{k in block} d_k'(S). Given the stock S this pins down every emission
 * in closed form, so the whole equilibrium reduces to the scalar equation
 *
 *   Phi(S) = S0 + sum_i s_i(S) - S = 0,
 *
 * where Phi is strictly decreasing. It is solved by bisection.
 */

#ifndef COOPEXT_EQUILIBRIUM_HPP
#define COOPEXT_EQUILIBRIUM_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "coopext/bisection.hpp"
#include "coopext/error.hpp"
#include "coopext/model.hpp"
#include "coopext/partition.hpp"

namespace coopext {

struct EquilibriumOutcome {
  std::vector<double> emissions;
  double total_stock = 0.0;
  std::vector<double> gross_welfare;
  CoalitionStructure structure;
  bool converged = false;
  std::size_t iterations = 0;

  double total_welfare() const {
    return std::accumulate(gross_welfare.begin(), gross_welfare.end(), 0.0);
  }
};

inline double block_marginal_damage(const Game& game,
                                    std::span<const std::size_t> block,
                                    double stock) {
  double sum = 0.0;
  for (std::size_t i : block) sum += marginal_damage(game.agents.at(i), stock);
  return sum;
}

/// u_i(s_i) - d_i(S0 + sum s).
inline std::vector<double> gross_welfare(const Game& game,
                                         std::span<const double> emissions) {
  if (emissions.size() != game.size())
    throw ArgumentError("emission vector does not match the agent count");
  const double stock =
      std::accumulate(emissions.begin(), emissions.end(), game.s0);
  std::vector<double> out(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    const AgentModel& agent = game.agents[i];
    if (!(emissions[i] > 0.0))
      throw DomainError("gross welfare requires positive emissions (agent " +
                        std::to_string(agent.id) + ")");
    out[i] = agent.revenue.value(emissions[i]) - agent.damage.value(stock);
  }
  return out;
}

namespace detail {

inline constexpr double kLowerOffset = 1e-12;
inline constexpr double kFallbackPrice = 1e-9;

// Emission of agent i when its block's marginal damage is m. An underflowed
// marginal damage means the agent faces no cost at all.
inline double emission_at_price(const AgentModel& agent, double m) {
  if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
  return marginal_revenue_inverse(agent, m);
}

// Emissions implied by the first-order conditions at stock S.
inline std::vector<double> emissions_at_stock(const Game& game,
                                              const CoalitionStructure& p,
                                              double stock) {
  std::vector<double> s(game.size());
  for (const Block& block : p.blocks()) {
    const double m = block_marginal_damage(game, block, stock);
    for (std::size_t i : block) s[i] = emission_at_price(game.agents[i], m);
  }
  return s;
}

// Upper end of the bracket: no agent emits more than it would alone facing
// only its own marginal damage at S0.
inline double stock_upper_bound(const Game& game) {
  double hi = game.s0;
  for (const AgentModel& agent : game.agents) {
    double standalone = emission_at_price(agent, marginal_damage(agent, game.s0));
    if (!std::isfinite(standalone))
      standalone = marginal_revenue_inverse(agent, kFallbackPrice);
    hi += standalone;
  }
  return hi;
}

}  // namespace detail

inline EquilibriumOutcome nash_equilibrium(const Game& game,
                                           const CoalitionStructure& p) {
  require_valid(game);
  if (p.agent_count() != game.size())
    throw ArgumentError("coalition structure covers " +
                        std::to_string(p.agent_count()) + " agents, game has " +
                        std::to_string(game.size()));

  auto phi = [&](double stock) {
    const std::vector<double> s = detail::emissions_at_stock(game, p, stock);
    return std::accumulate(s.begin(), s.end(), game.s0) - stock;
  };
  const double lo = game.s0 + detail::kLowerOffset;
  const double hi = detail::stock_upper_bound(game);
  const RootResult root =
      bisect_decreasing(phi, lo, hi, game.tolerance, game.max_iter);

  EquilibriumOutcome out;
  out.emissions = detail::emissions_at_stock(game, p, root.x);
  out.total_stock =
      std::accumulate(out.emissions.begin(), out.emissions.end(), game.s0);
  out.gross_welfare = gross_welfare(game, out.emissions);
  out.structure = p;
  out.converged = true;
  out.iterations = root.iterations;
  return out;
}

/// The welfare-maximising profile: Nash equilibrium of the grand coalition.
inline EquilibriumOutcome pareto_optimum(const Game& game) {
  require_valid(game);
  return nash_equilibrium(game, CoalitionStructure::grand_coalition(game.size()));
}

}  // namespace coopext

#endif  // COOPEXT_EQUILIBRIUM_HPP
