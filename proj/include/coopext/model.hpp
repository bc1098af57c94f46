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
 * \file coopext/model.hpp
 *
 * \brief Agents of a pollution-control game and the game itself.
 *
 * Every agent i chooses an emission s_i > 0 and earns the revenue
 * u_i(s_i) = a + b s_i^p. The pollution stock S = S0 + sum_i s_i damages
 * every agent by d_i(S) = c S^q. With b > 0, 0 < p < 1 the revenue is
 * strictly increasing and strictly concave; with c > 0, q > 1 the damage is
 * strictly increasing and strictly convex. Those four inequalities are what
 * make every equilibrium in this library unique and interior.
 */

#ifndef COOPEXT_MODEL_HPP
#define COOPEXT_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coopext/error.hpp"

namespace coopext {

/// u(s) = a + b s^p.
struct PowerRevenue {
  double a = 0.0;
  double b = 1.0;
  double p = 0.5;

  double value(double s) const { return a + b * std::pow(s, p); }
  double marginal(double s) const { return b * p * std::pow(s, p - 1.0); }
  double second(double s) const {
    return b * p * (p - 1.0) * std::pow(s, p - 2.0);
  }
  /// Emission at which the marginal revenue equals m.
  double inverse_marginal(double m) const {
    return std::pow(b * p / m, 1.0 / (1.0 - p));
  }

  friend bool operator==(const PowerRevenue&, const PowerRevenue&) = default;
};

/// d(S) = c S^q.
struct PowerDamage {
  double c = 1.0;
  double q = 2.0;

  double value(double stock) const { return c * std::pow(stock, q); }
  double marginal(double stock) const {
    return c * q * std::pow(stock, q - 1.0);
  }
  double second(double stock) const {
    return c * q * (q - 1.0) * std::pow(stock, q - 2.0);
  }

  friend bool operator==(const PowerDamage&, const PowerDamage&) = default;
};

struct AgentModel {
  std::size_t id = 0;
  PowerRevenue revenue;
  PowerDamage damage;

  friend bool operator==(const AgentModel&, const AgentModel&) = default;
};

struct Game {
  std::vector<AgentModel> agents;
  double s0 = 0.0;            // initial pollution stock
  double tolerance = 1e-10;   // stock units
  std::size_t max_iter = 500;

  std::size_t size() const noexcept { return agents.size(); }

  friend bool operator==(const Game&, const Game&) = default;
};

inline double marginal_revenue(const AgentModel& agent, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    std::ostringstream msg;
    msg << "marginal revenue of agent " << agent.id
        << " requires a positive emission, got " << s;
    throw DomainError(msg.str());
  }
  return agent.revenue.marginal(s);
}

inline double marginal_revenue_inverse(const AgentModel& agent, double m) {
  if (!(m > 0.0)) {
    std::ostringstream msg;
    msg << "inverse marginal revenue of agent " << agent.id
        << " requires a positive price, got " << m;
    throw DomainError(msg.str());
  }
  return agent.revenue.inverse_marginal(m);
}

inline double marginal_damage(const AgentModel& agent, double stock) {
  if (!(stock >= 0.0)) {
    std::ostringstream msg;
    msg << "marginal damage of agent " << agent.id
        << " requires a non-negative stock, got " << stock;
    throw DomainError(msg.str());
  }
  return agent.damage.marginal(stock);
}

/// One violated constraint. agent_id is 0 for game-level problems.
struct Violation {
  std::size_t agent_id = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate(const Game& game) {
  ValidationReport report;
  auto flag = [&report](std::size_t id, std::string message) {
    report.violations.push_back({id, std::move(message)});
  };

  if (game.agents.empty()) flag(0, "game has no agents");
  if (!(game.s0 >= 0.0) || !std::isfinite(game.s0))
    flag(0, "initial stock must be finite and non-negative");
  if (!(game.tolerance > 0.0)) flag(0, "tolerance must be positive");
  if (game.max_iter == 0) flag(0, "max_iter must be positive");

  std::set<std::size_t> seen;
  for (const AgentModel& agent : game.agents) {
    if (!seen.insert(agent.id).second) flag(agent.id, "duplicate agent id");
    const PowerRevenue& u = agent.revenue;
    const PowerDamage& d = agent.damage;
    if (!std::isfinite(u.a)) flag(agent.id, "revenue offset not finite");
    if (!(u.b > 0.0) || !std::isfinite(u.b))
      flag(agent.id, "revenue not strictly increasing (b must be > 0)");
    if (!(u.p > 0.0))
      flag(agent.id, "revenue not strictly increasing (p must be > 0)");
    if (!(u.p < 1.0))
      flag(agent.id, "revenue not strictly concave (p must be < 1)");
    if (!(d.c > 0.0) || !std::isfinite(d.c))
      flag(agent.id, "damage not strictly increasing (c must be > 0)");
    if (!(d.q > 1.0) || !std::isfinite(d.q))
      flag(agent.id, "damage not strictly convex (q must be > 1)");
  }
  return report;
}

/// Throws ArgumentError listing every violation; used by the solvers.
inline void require_valid(const Game& game) {
  const ValidationReport report = validate(game);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid game:";
  for (const Violation& v : report.violations) {
    msg << (v.agent_id ? " agent " + std::to_string(v.agent_id) + ": " : " ")
        << v.message << ';';
  }
  throw ArgumentError(msg.str());
}

}  // namespace coopext

#endif  // COOPEXT_MODEL_HPP
