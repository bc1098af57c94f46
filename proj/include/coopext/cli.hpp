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
 * \file coopext/cli.hpp
 *
 * \brief Command dispatch for the coopext tool.
 *
 * Exit codes: 0 ok, 1 reference diff, 2 input error, 3 solver failure,
 * 4 missing reference fixture.
 */

#ifndef COOPEXT_CLI_HPP
#define COOPEXT_CLI_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/io/format.hpp"
#include "coopext/io/game_file.hpp"
#include "coopext/io/golden.hpp"
#include "coopext/io/tables.hpp"
#include "coopext/model.hpp"
#include "coopext/partition.hpp"
#include "coopext/pricing.hpp"
#include "coopext/solution.hpp"

namespace coopext::cli {

enum ExitCode : int {
  kOk = 0,
  kDiff = 1,
  kInputError = 2,
  kSolverError = 3,
  kMissingFixture = 4,
};

enum class Format { kHuman, kCsv, kJson };

struct Options {
  std::string game_path;
  std::string format = "human";
  std::optional<double> tolerance;
  std::string partition;
  std::string candidate;
  int table = 0;
  std::string golden_dir;
};

namespace detail {

using io::fixed3;
using io::full;
using nlohmann::json;

inline Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  return Format::kHuman;
}

inline std::string agent_label(const Game& game, std::size_t i) {
  return std::to_string(game.agents[i].id);
}

inline std::string number(Format f, double x) {
  return f == Format::kHuman ? fixed3(x) : full(x);
}

inline Game load(const Options& opt) {
  if (opt.game_path.empty()) throw ParseError("no game file given (use --game <file>)");
  Game game = io::load_game(opt.game_path);
  if (opt.tolerance) game.tolerance = *opt.tolerance;
  return game;
}

inline void print_violations(const ValidationReport& report, std::ostream& os) {
  for (const Violation& v : report.violations) {
    if (v.agent_id)
      os << "agent " << v.agent_id << ": " << v.message << '\n';
    else
      os << "game: " << v.message << '\n';
  }
}

inline int cmd_validate(const Game& game, Format f, std::ostream& out) {
  const ValidationReport report = validate(game);
  if (f == Format::kJson) {
    json doc{{"valid", report.ok()}, {"violations", json::array()}};
    for (const Violation& v : report.violations)
      doc["violations"].push_back({{"agent", v.agent_id}, {"message", v.message}});
    out << doc.dump(2) << '\n';
  } else if (f == Format::kCsv) {
    io::write_csv_row(out, {"agent", "violation"});
    for (const Violation& v : report.violations)
      io::write_csv_row(out, {std::to_string(v.agent_id), v.message});
  } else if (report.ok()) {
    out << "valid: " << game.size() << " agents\n";
  } else {
    print_violations(report, out);
  }
  return report.ok() ? kOk : kInputError;
}

inline void print_outcome(const Game& game, const EquilibriumOutcome& eq,
                          Format f, std::ostream& out) {
  if (f == Format::kJson) {
    json doc{{"structure", eq.structure.to_string()},
             {"emissions", eq.emissions},
             {"total_stock", eq.total_stock},
             {"gross_welfare", eq.gross_welfare},
             {"total_welfare", eq.total_welfare()},
             {"converged", eq.converged},
             {"iterations", eq.iterations}};
    out << doc.dump(2) << '\n';
    return;
  }
  if (f == Format::kCsv) {
    io::write_csv_row(out, {"agent", "emission", "gross_welfare"});
    for (std::size_t i = 0; i < game.size(); ++i)
      io::write_csv_row(out, {agent_label(game, i), full(eq.emissions[i]),
                              full(eq.gross_welfare[i])});
    io::write_csv_row(out, {"total", full(eq.total_stock - game.s0),
                            full(eq.total_welfare())});
    return;
  }
  out << "structure: " << eq.structure.to_string() << "\n\n";
  io::TextTable table({"agent", "emission", "gross_welfare"});
  for (std::size_t i = 0; i < game.size(); ++i)
    table.add({agent_label(game, i), fixed3(eq.emissions[i]),
               fixed3(eq.gross_welfare[i])});
  table.add({"sum", fixed3(eq.total_stock - game.s0), fixed3(eq.total_welfare())});
  table.render(out);
  out << "\ntotal stock S = " << fixed3(eq.total_stock) << " ("
      << eq.iterations << " bisection steps)\n";
}

inline int cmd_prices(const Game& game, Format f, std::ostream& out) {
  const PlannerPoint planner(game);
  const PriceSchedule& prices = planner.prices;
  const std::vector<double> residual =
      net_price_condition(game, prices, planner.pareto.total_stock);
  if (f == Format::kJson) {
    json doc{{"t", prices.t},
             {"T", prices.T},
             {"t_bar", prices.t_bar},
             {"pareto_stock", planner.pareto.total_stock},
             {"net_price_residual", residual}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  std::vector<std::string> header{"agent", "T", "net_price", "t_bar", "residual"};
  if (f == Format::kCsv) {
    io::write_csv_row(out, header);
  }
  io::TextTable table(header);
  for (std::size_t i = 0; i < game.size(); ++i) {
    std::vector<std::string> row{agent_label(game, i), number(f, prices.T[i]),
                                 number(f, prices.net_price(i)),
                                 number(f, prices.t_bar[i]),
                                 f == Format::kHuman ? fixed3(residual[i]) : full(residual[i])};
    if (f == Format::kCsv)
      io::write_csv_row(out, row);
    else
      table.add(std::move(row));
  }
  if (f == Format::kCsv) {
    io::write_csv_row(out, {"t", full(prices.t), "", "", ""});
    return kOk;
  }
  table.render(out);
  out << "\npermit price t = " << fixed3(prices.t) << " at Pareto stock S* = "
      << fixed3(planner.pareto.total_stock) << '\n';
  return kOk;
}

inline int cmd_wvalue(const Game& game, Format f, std::ostream& out) {
  const PlannerPoint planner(game);
  const WelfareAllocation w = w_value(game, planner);
  const EquilibriumOutcome nash =
      nash_equilibrium(game, CoalitionStructure::singletons(game.size()));
  const double balance = fiscal_balance(game, planner.prices,
                                        planner.pareto.emissions,
                                        w.basis.allocation);
  std::vector<double> improvement(game.size());
  for (std::size_t i = 0; i < game.size(); ++i)
    improvement[i] = w.values[i] - nash.gross_welfare[i];

  if (f == Format::kJson) {
    json doc{{"s_tilde", w.basis.allocation},
             {"s_star", planner.pareto.emissions},
             {"T", planner.prices.T},
             {"t", planner.prices.t},
             {"w_value", w.values},
             {"nash_welfare", nash.gross_welfare},
             {"improvement", improvement},
             {"total", w.total()},
             {"fiscal_balance", balance}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  std::vector<std::string> header{"agent", "s_tilde", "s_star", "T",
                                  "w_value", "nash_welfare", "improvement"};
  auto row_of = [&](std::string label, double a, double b, double c, double d,
                    double e, double g) {
    return std::vector<std::string>{std::move(label), number(f, a), number(f, b),
                                    number(f, c), number(f, d), number(f, e),
                                    number(f, g)};
  };
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < game.size(); ++i)
    rows.push_back(row_of(agent_label(game, i), w.basis.allocation[i],
                          planner.pareto.emissions[i], planner.prices.T[i],
                          w.values[i], nash.gross_welfare[i], improvement[i]));
  rows.push_back(row_of("sum", io::detail::sum(w.basis.allocation),
                        io::detail::sum(planner.pareto.emissions),
                        io::detail::sum(planner.prices.T), w.total(),
                        nash.total_welfare(), io::detail::sum(improvement)));
  if (f == Format::kCsv) {
    io::write_csv_row(out, header);
    for (const auto& row : rows) io::write_csv_row(out, row);
    return kOk;
  }
  io::TextTable table(header);
  for (auto& row : rows) table.add(std::move(row));
  table.render(out);
  out << "\npermit price t = " << fixed3(planner.prices.t)
      << "\nfiscal balance residual = " << fixed3(balance) << '\n';
  return kOk;
}

inline std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  for (const std::string& cell : io::split_csv_line(text)) {
    const std::vector<double> v = io::parse_cell(cell);
    if (v.size() != 1) throw ParseError("candidate must be a comma-separated list of numbers");
    out.push_back(v[0]);
  }
  return out;
}

inline std::string coalition_string(const Block& c) {
  std::string s = "[";
  for (std::size_t k = 0; k < c.size(); ++k)
    s += (k ? "," : "") + std::to_string(c[k] + 1);
  return s + "]";
}

inline int cmd_gamma_core(const Game& game, const Options& opt, Format f,
                          std::ostream& out) {
  std::vector<double> candidate = opt.candidate.empty()
                                      ? w_value(game).values
                                      : parse_vector(opt.candidate);
  const GammaCoreReport report = gamma_core_test(game, candidate);
  if (f == Format::kJson) {
    json doc{{"candidate", candidate},
             {"pareto_total", report.pareto_total},
             {"efficiency_gap", report.efficiency_gap},
             {"member", report.member},
             {"rows", json::array()}};
    for (const GammaCoreRow& row : report.rows)
      doc["rows"].push_back({{"coalition", coalition_string(row.coalition)},
                             {"deviating_welfare", row.deviating_welfare},
                             {"candidate_welfare", row.candidate_welfare},
                             {"surplus", row.surplus}});
    out << doc.dump(2) << '\n';
    return kOk;
  }
  std::vector<std::string> header{"coalition", "deviating_nash", "candidate", "surplus"};
  if (f == Format::kCsv) {
    io::write_csv_row(out, header);
    for (const GammaCoreRow& row : report.rows)
      io::write_csv_row(out, {coalition_string(row.coalition), full(row.deviating_welfare),
                              full(row.candidate_welfare), full(row.surplus)});
    return kOk;
  }
  io::TextTable table(header);
  for (const GammaCoreRow& row : report.rows)
    table.add({coalition_string(row.coalition), fixed3(row.deviating_welfare),
               fixed3(row.candidate_welfare), fixed3(row.surplus)});
  table.render(out);
  out << "\nPareto total = " << fixed3(report.pareto_total)
      << ", candidate total - Pareto total = " << fixed3(report.efficiency_gap)
      << "\nin gamma-core: " << (report.member ? "yes" : "no") << '\n';
  return kOk;
}

inline int cmd_report(const Game& game, const Options& opt, Format f,
                      std::ostream& out, bool color) {
  if (!io::is_supported_table(opt.table))
    throw ArgumentError("--table must be 4, 5, 6 or 7");
  std::string dir = opt.golden_dir;
  if (dir.empty()) {
    const std::filesystem::path parent =
        std::filesystem::path(opt.game_path).parent_path();
    dir = (parent.empty() ? std::filesystem::path("golden") : parent / "golden").string();
  }
  const io::TableReport report = io::reproduce_table(game, opt.table, dir);
  if (f == Format::kJson)
    out << io::to_json(report).dump(2) << '\n';
  else if (f == Format::kCsv)
    io::render_csv(report, out);
  else
    io::render_human(report, out, color);
  return report.pass() ? kOk : kDiff;
}

}  // namespace detail

/// Runs the tool. `color` enables ANSI colour in human output.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err, bool color = false) {
  CLI::App app{"Cooperative pollution-control games: equilibria, prices, "
               "w-value and gamma-core checks"};
  app.name("coopext");
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--game", opt.game_path, "Game file (JSON)");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "csv", "json"}));
  app.add_option("--tolerance", opt.tolerance, "Bisection tolerance (stock units)")
      ->check(CLI::PositiveNumber);

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check the game's hypotheses");
  CLI::App* nash_cmd = app.add_subcommand("nash", "Nash equilibrium under a coalition structure");
  nash_cmd->add_option("--partition", opt.partition, "Structure, e.g. \"[1,2],[3],[4]\"")
      ->required();
  CLI::App* pareto_cmd = app.add_subcommand("pareto", "Pareto optimum");
  CLI::App* prices_cmd = app.add_subcommand("prices", "Optimal permit price and subsidies");
  CLI::App* wvalue_cmd = app.add_subcommand("wvalue", "w-value and its construction");
  CLI::App* core_cmd = app.add_subcommand("gamma-core", "gamma-core membership test");
  core_cmd->add_option("--candidate", opt.candidate,
                       "Welfare vector \"w1,w2,...\" (default: the w-value)");
  CLI::App* report_cmd = app.add_subcommand("report", "Reproduce a reference table and diff it");
  report_cmd->add_option("--table", opt.table, "Table number (4, 5, 6 or 7)")->required();
  report_cmd->add_option("--golden", opt.golden_dir,
                         "Directory of reference CSVs (default: <game dir>/golden)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const Format format = detail::parse_format(opt.format);
  try {
    const Game game = detail::load(opt);
    if (validate_cmd->parsed()) return detail::cmd_validate(game, format, out);

    const ValidationReport report = validate(game);
    if (!report.ok()) {
      err << "invalid game:\n";
      detail::print_violations(report, err);
      return kInputError;
    }
    if (nash_cmd->parsed()) {
      const CoalitionStructure p = parse_partition(opt.partition, game.size());
      detail::print_outcome(game, nash_equilibrium(game, p), format, out);
      return kOk;
    }
    if (pareto_cmd->parsed()) {
      detail::print_outcome(game, pareto_optimum(game), format, out);
      return kOk;
    }
    if (prices_cmd->parsed()) return detail::cmd_prices(game, format, out);
    if (wvalue_cmd->parsed()) return detail::cmd_wvalue(game, format, out);
    if (core_cmd->parsed()) return detail::cmd_gamma_core(game, opt, format, out);
    if (report_cmd->parsed())
      return detail::cmd_report(game, opt, format, out, color);
  } catch (const io::FixtureError& e) {
    err << "error: " << e.what() << '\n';
    return kMissingFixture;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (last bracket [" << e.bracket_lo()
        << ", " << e.bracket_hi() << "])\n";
    return kSolverError;
  } catch (const OracleError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace coopext::cli

#endif  // COOPEXT_CLI_HPP
