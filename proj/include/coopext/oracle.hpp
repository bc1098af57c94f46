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
 * \file coopext/oracle.hpp
 *
 * \brief Brute-force grid search for equilibria and the Pareto optimum.
 *
 * Only welfare levels u_i(s) and d_i(S) are evaluated here; no derivative,
 * inverse or root finder is involved. This keeps the oracle independent of
 * the closed-form solver it is used to check.
 */

#ifndef COOPEXT_ORACLE_HPP
#define COOPEXT_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/model.hpp"
#include "coopext/partition.hpp"

namespace coopext {

/// Log-spaced emission grid shared by every agent.
struct Grid {
  double lo = 1e-4;
  double hi = 5.0;
  std::size_t n = 2000;

  void check() const {
    if (!(lo > 0.0) || !(hi > lo) || n < 100)
      throw ArgumentError("grid needs 0 < lo < hi and at least 100 points");
  }

  std::vector<double> points() const {
    check();
    std::vector<double> out(n);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = std::exp(log_lo + step * static_cast<double>(k));
    out.front() = lo;
    out.back() = hi;
    return out;
  }

  /// Ratio between neighbouring points.
  double ratio() const {
    return std::exp((std::log(hi) - std::log(lo)) / static_cast<double>(n - 1));
  }

  /// Spacing of the grid around x.
  double resolution(double x) const { return x * (ratio() - 1.0); }
};

inline constexpr std::size_t kOracleMaxSweeps = 1000;

namespace detail {

inline double block_damage(const Game& game, const Block& block, double stock) {
  double sum = 0.0;
  for (std::size_t j : block) sum += game.agents[j].damage.value(stock);
  return sum;
}

inline EquilibriumOutcome outcome_from_profile(const Game& game,
                                               const CoalitionStructure& p,
                                               std::vector<double> emissions,
                                               std::size_t sweeps) {
  EquilibriumOutcome out;
  out.total_stock = std::accumulate(emissions.begin(), emissions.end(), game.s0);
  out.gross_welfare.resize(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    out.gross_welfare[i] = game.agents[i].revenue.value(emissions[i]) -
                           game.agents[i].damage.value(out.total_stock);
  }
  out.emissions = std::move(emissions);
  out.structure = p;
  out.converged = true;
  out.iterations = sweeps;
  return out;
}

// Discrete argmax of a unimodal sequence by hill climbing from `start`.
template <typename F>
std::size_t argmax_unimodal(F&& f, std::size_t n, std::size_t start) {
  std::size_t k = start;
  double best = f(k);
  while (k + 1 < n) {
    const double next = f(k + 1);
    if (!(next > best)) break;
    best = next;
    ++k;
  }
  while (k > 0) {
    const double prev = f(k - 1);
    if (!(prev > best)) break;
    best = prev;
    --k;
  }
  return k;
}

}  // namespace detail

/// Gauss-Seidel best responses on the grid. Each block in turn maximises its
/// joint welfare one member at a time by full scan over the grid, holding
/// everyone else fixed, until a whole sweep changes nothing.
inline EquilibriumOutcome best_response_grid(const Game& game,
                                             const CoalitionStructure& p,
                                             const Grid& grid) {
  require_valid(game);
  if (p.agent_count() != game.size())
    throw ArgumentError("coalition structure does not match the game");
  const std::vector<double> g = grid.points();
  const std::size_t n = g.size();
  const std::size_t agents = game.size();

  std::vector<std::vector<double>> revenue(agents, std::vector<double>(n));
  for (std::size_t i = 0; i < agents; ++i)
    for (std::size_t k = 0; k < n; ++k)
      revenue[i][k] = game.agents[i].revenue.value(g[k]);

  std::vector<std::size_t> idx(agents, n / 2);
  for (std::size_t sweep = 1; sweep <= kOracleMaxSweeps; ++sweep) {
    bool changed = false;
    for (const Block& block : p.blocks()) {
      for (std::size_t i : block) {
        double rest = game.s0;
        for (std::size_t j = 0; j < agents; ++j)
          if (j != i) rest += g[idx[j]];
        std::size_t best_k = idx[i];
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
          const double value =
              revenue[i][k] - detail::block_damage(game, block, rest + g[k]);
          if (value > best) {
            best = value;
            best_k = k;
          }
        }
        if (best_k != idx[i]) {
          idx[i] = best_k;
          changed = true;
        }
      }
    }
    if (!changed) {
      std::vector<double> s(agents);
      for (std::size_t i = 0; i < agents; ++i) s[i] = g[idx[i]];
      return detail::outcome_from_profile(game, p, std::move(s), sweep);
    }
  }
  throw OracleError("grid best response did not settle within " +
                    std::to_string(kOracleMaxSweeps) + " sweeps");
}

/// Grid argmax of total welfare. Up to four agents every combination of the
/// leading coordinates is enumerated and the last coordinate is maximised
/// exactly along its axis (total welfare is concave, so each axis is
/// unimodal). Larger games fall back to coordinate ascent.
inline std::vector<double> pareto_grid(const Game& game, const Grid& grid) {
  require_valid(game);
  const std::size_t agents = game.size();
  if (agents > 4) {
    return best_response_grid(game, CoalitionStructure::grand_coalition(agents),
                              grid)
        .emissions;
  }

  const std::vector<double> g = grid.points();
  const std::size_t n = g.size();
  std::vector<std::vector<double>> revenue(agents, std::vector<double>(n));
  for (std::size_t i = 0; i < agents; ++i)
    for (std::size_t k = 0; k < n; ++k)
      revenue[i][k] = game.agents[i].revenue.value(g[k]);

  auto total_damage = [&](double stock) {
    double sum = 0.0;
    for (const AgentModel& agent : game.agents) sum += agent.damage.value(stock);
    return sum;
  };

  const std::size_t last = agents - 1;
  std::vector<std::size_t> idx(agents, 0);
  std::vector<std::size_t> best_idx(agents, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t warm = n / 2;

  while (true) {
    double lead_revenue = 0.0;
    double lead_stock = game.s0;
    for (std::size_t i = 0; i < last; ++i) {
      lead_revenue += revenue[i][idx[i]];
      lead_stock += g[idx[i]];
    }
    auto along_last = [&](std::size_t k) {
      return lead_revenue + revenue[last][k] - total_damage(lead_stock + g[k]);
    };
    warm = detail::argmax_unimodal(along_last, n, warm);
    const double value = along_last(warm);
    if (value > best) {
      best = value;
      idx[last] = warm;
      best_idx = idx;
    }

    // Odometer over the leading coordinates.
    std::size_t i = 0;
    while (i < last && ++idx[i] == n) idx[i++] = 0;
    if (i == last) break;
  }

  std::vector<double> out(agents);
  for (std::size_t i = 0; i < agents; ++i) out[i] = g[best_idx[i]];
  return out;
}

}  // namespace coopext

#endif  // COOPEXT_ORACLE_HPP
