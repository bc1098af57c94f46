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
 * \file coopext/io/tables.hpp
 *
 * \brief Recomputes the reference tables of the 4-agent example and diffs
 *        them cell by cell.
 *
 * Table 4: prices, Pareto and w-IPA emissions, w-value per agent.
 * Table 5: deviating-coalition Nash welfare versus the w-value.
 * Table 6: Nash emissions and gross welfare for every structure.
 * Table 7: Nash welfare versus category-I welfare for every structure.
 *
 * Rows are identified by the reference file (agent number or structure
 * label); the report follows the reference row order.
 */

#ifndef COOPEXT_IO_TABLES_HPP
#define COOPEXT_IO_TABLES_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/io/format.hpp"
#include "coopext/io/golden.hpp"
#include "coopext/model.hpp"
#include "coopext/partition.hpp"
#include "coopext/solution.hpp"

namespace coopext::io {

/// Allowed absolute gap between a reproduced value rounded to 3 decimals and
/// the reference value.
inline constexpr double kGoldenTolerance = 0.002;

enum class CellStatus { kMatch, kMismatch, kFlagged, kUnreferenced };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::kMatch: return "match";
    case CellStatus::kMismatch: return "MISMATCH";
    case CellStatus::kFlagged: return "FLAGGED";
    case CellStatus::kUnreferenced: return "unreferenced";
  }
  return "?";
}

struct ReportCell {
  std::string column;
  std::vector<double> reproduced;
  std::vector<double> golden;
  CellStatus status = CellStatus::kUnreferenced;
};

struct ReportRow {
  std::string label;      // serial number or agent number
  std::string structure;  // canonical structure, empty for per-agent tables
  std::vector<ReportCell> cells;
};

struct TableReport {
  int table = 0;
  std::string title;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  std::map<std::string, std::string> notes;          // flagged column -> why
  std::vector<std::pair<std::string, bool>> checks;  // structural invariants

  std::size_t count(CellStatus s) const {
    std::size_t n = 0;
    for (const ReportRow& row : rows)
      for (const ReportCell& cell : row.cells) n += cell.status == s;
    return n;
  }

  bool pass() const {
    if (count(CellStatus::kMismatch) != 0) return false;
    for (const auto& check : checks)
      if (!check.second) return false;
    return true;
  }
};

inline bool cell_matches(std::span<const double> reproduced,
                         std::span<const double> golden) {
  if (reproduced.size() != golden.size()) return false;
  for (std::size_t k = 0; k < golden.size(); ++k) {
    if (!(std::abs(round3(reproduced[k]) - golden[k]) <= kGoldenTolerance + 1e-9))
      return false;
  }
  return true;
}

inline std::string golden_file_name(int table) {
  return "table" + std::to_string(table) + ".csv";
}

inline bool is_supported_table(int table) { return table >= 4 && table <= 7; }

namespace detail {

using Values = std::map<std::string, std::vector<double>>;

inline std::string agent_column(const std::string& prefix, std::size_t i) {
  return prefix + "_" + std::to_string(i + 1);
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Shared solves for one game; Nash outcomes are cached per structure.
class TableContext {
 public:
  explicit TableContext(const Game& game)
      : game_(game),
        planner_(game),
        wvalue_(w_value(game, planner_)),
        nash_singletons_(nash(CoalitionStructure::singletons(game.size()))) {}

  const Game& game() const { return game_; }
  const PlannerPoint& planner() const { return planner_; }
  const WelfareAllocation& wvalue() const { return wvalue_; }
  const EquilibriumOutcome& nash_singletons() const { return nash_singletons_; }

  const EquilibriumOutcome& nash(const CoalitionStructure& p) {
    const std::string key = p.to_string();
    auto it = nash_.find(key);
    if (it == nash_.end()) it = nash_.emplace(key, nash_equilibrium(game_, p)).first;
    return it->second;
  }

  const GammaCoreReport& gamma_core() {
    if (!gamma_) gamma_ = gamma_core_test(game_, wvalue_.values);
    return *gamma_;
  }

 private:
  const Game& game_;
  PlannerPoint planner_;
  WelfareAllocation wvalue_;
  std::map<std::string, EquilibriumOutcome> nash_;
  EquilibriumOutcome nash_singletons_;
  std::optional<GammaCoreReport> gamma_;
};

inline Values table4_row(TableContext& ctx, const std::string& label) {
  const std::size_t n = ctx.game().size();
  const PriceSchedule& prices = ctx.planner().prices;
  const std::vector<double>& s_star = ctx.planner().pareto.emissions;
  const std::vector<double>& s_tilde = ctx.wvalue().basis.allocation;
  const std::vector<double>& w = ctx.wvalue().values;
  const std::vector<double>& nash_w = ctx.nash_singletons().gross_welfare;

  Values v;
  if (label == "sum") {
    v["T"] = {sum(prices.T)};
    v["s_star"] = {sum(s_star)};
    v["s_tilde"] = {sum(s_tilde)};
    v["wvalue"] = {sum(w)};
    v["nash_welfare"] = {sum(nash_w)};
    v["improvement"] = {sum(w) - sum(nash_w)};
    return v;
  }
  std::size_t i = 0;
  try {
    i = std::stoul(label) - 1;
  } catch (const std::logic_error&) {
    throw ParseError("table 4 row label \"" + label + "\" is not an agent number");
  }
  if (i >= n) throw ParseError("table 4 row refers to agent " + label + " of " + std::to_string(n));
  if (i == 0) v["t_star"] = {prices.t};
  v["T"] = {prices.T[i]};
  v["s_star"] = {s_star[i]};
  v["s_tilde"] = {s_tilde[i]};
  v["wvalue"] = {w[i]};
  v["nash_welfare"] = {nash_w[i]};
  v["improvement"] = {w[i] - nash_w[i]};
  return v;
}

// The deviating coalition behind a gamma-core structure: its only
// non-singleton block, or every agent separately for the all-singleton row.
inline std::vector<Block> deviating_coalitions(const CoalitionStructure& p) {
  if (p.is_singletons()) return p.blocks();
  std::vector<Block> big;
  for (const Block& b : p.blocks())
    if (b.size() > 1) big.push_back(b);
  if (big.size() != 1)
    throw ParseError("structure " + p.to_string() +
                     " is not of the form {C} plus singletons");
  return big;
}

inline Values table5_row(TableContext& ctx, const CoalitionStructure& p) {
  const std::size_t n = ctx.game().size();
  const EquilibriumOutcome& nash = ctx.nash(p);
  const std::vector<double>& w = ctx.wvalue().values;
  const GammaCoreReport& core = ctx.gamma_core();
  Values v;
  for (std::size_t i = 0; i < n; ++i) {
    v[agent_column("nash", i)] = {nash.gross_welfare[i]};
    v[agent_column("wvalue", i)] = {w[i]};
  }
  v["nash_sum"] = {nash.total_welfare()};
  v["wvalue_sum"] = {sum(w)};
  for (const Block& c : deviating_coalitions(p)) {
    const GammaCoreRow* row = core.find(c);
    if (row == nullptr) throw ParseError("no gamma-core row for " + p.to_string());
    v["dev_nash"].push_back(row->deviating_welfare);
    v["dev_wvalue"].push_back(row->candidate_welfare);
    v["surplus"].push_back(row->surplus);
  }
  return v;
}

inline Values table6_row(TableContext& ctx, const CoalitionStructure& p) {
  const EquilibriumOutcome& nash = ctx.nash(p);
  Values v;
  for (std::size_t i = 0; i < ctx.game().size(); ++i) {
    v[agent_column("s", i)] = {nash.emissions[i]};
    v[agent_column("w", i)] = {nash.gross_welfare[i]};
  }
  v["s_sum"] = {sum(nash.emissions)};
  v["w_sum"] = {nash.total_welfare()};
  return v;
}

inline Values table7_row(TableContext& ctx, const CoalitionStructure& p) {
  const EquilibriumOutcome& nash = ctx.nash(p);
  const WelfareAllocation cat =
      welfare_under_allocation(ctx.game(), ctx.planner(), nash.emissions);
  Values v;
  for (std::size_t i = 0; i < ctx.game().size(); ++i) {
    v[agent_column("nash", i)] = {nash.gross_welfare[i]};
    v[agent_column("cat", i)] = {cat.values[i]};
    v[agent_column("diff", i)] = {cat.values[i] - nash.gross_welfare[i]};
  }
  return v;
}

inline const char* table_title(int table) {
  switch (table) {
    case 4: return "Result of the 4-agent example";
    case 5: return "w-value versus deviating-coalition Nash welfare";
    case 6: return "Nash equilibrium emission and welfare under every coalition structure";
    case 7: return "Nash welfare versus category-I welfare";
  }
  return "";
}

}  // namespace detail

/// Recomputes table `table` for `game` and compares it with `golden`.
inline TableReport reproduce_table(const Game& game, int table,
                                   const GoldenTable& golden) {
  if (!is_supported_table(table))
    throw ArgumentError("unknown table " + std::to_string(table) +
                        " (expected 4, 5, 6 or 7)");
  require_valid(game);
  detail::TableContext ctx(game);

  TableReport report;
  report.table = table;
  report.title = detail::table_title(table);
  const std::size_t keys = table == 4 ? 1 : 2;
  if (golden.header.size() <= keys)
    throw ParseError("reference table " + std::to_string(table) + " has no value columns");
  report.columns.assign(golden.header.begin() + static_cast<long>(keys),
                        golden.header.end());
  for (const std::string& col : golden.flagged) {
    auto note = golden.notes.find(col);
    report.notes[col] = note == golden.notes.end() ? "" : note->second;
  }

  bool improvements_positive = true;
  for (const std::vector<std::string>& ref : golden.rows) {
    ReportRow row;
    row.label = ref[0];
    detail::Values values;
    std::optional<CoalitionStructure> structure;
    if (table == 4) {
      values = detail::table4_row(ctx, ref[0]);
    } else {
      structure = parse_partition(ref[1], game.size());
      row.structure = structure->to_string();
      if (table == 5) values = detail::table5_row(ctx, *structure);
      if (table == 6) values = detail::table6_row(ctx, *structure);
      if (table == 7) values = detail::table7_row(ctx, *structure);
    }

    for (std::size_t k = keys; k < ref.size(); ++k) {
      ReportCell cell;
      cell.column = golden.header[k];
      auto it = values.find(cell.column);
      if (it == values.end() && !ref[k].empty())
        throw ParseError("reference column \"" + cell.column +
                         "\" is not produced for table " + std::to_string(table));
      if (it != values.end()) cell.reproduced = it->second;
      cell.golden = parse_cell(ref[k]);
      if (cell.golden.empty()) {
        cell.status = CellStatus::kUnreferenced;
      } else if (golden.flagged.count(cell.column)) {
        cell.status = CellStatus::kFlagged;
      } else {
        cell.status = cell_matches(cell.reproduced, cell.golden)
                          ? CellStatus::kMatch
                          : CellStatus::kMismatch;
      }
      if (table == 7 && cell.column.rfind("diff_", 0) == 0) {
        for (double x : cell.reproduced) {
          const bool strict = structure && !structure->is_grand_coalition();
          if (strict ? !(x > 0.0) : !(x >= -1e-9)) improvements_positive = false;
        }
      }
      row.cells.push_back(std::move(cell));
    }
    report.rows.push_back(std::move(row));
  }

  if (table == 5) {
    report.checks.emplace_back("w-value lies in the gamma-core",
                               ctx.gamma_core().member);
  }
  if (table == 7) {
    report.checks.emplace_back(
        "category-I welfare improves every agent in every incomplete structure",
        improvements_positive);
  }
  if (table == 4) {
    const double balance = fiscal_balance(game, ctx.planner().prices,
                                          ctx.planner().pareto.emissions,
                                          ctx.wvalue().basis.allocation);
    report.checks.emplace_back("transfers balance under the w-IPA",
                               std::abs(balance) <= 1e-9);
  }
  return report;
}

inline TableReport reproduce_table(const Game& game, int table,
                                   const std::string& golden_dir) {
  const std::string path = golden_dir + "/" + golden_file_name(table);
  return reproduce_table(game, table, load_golden(path));
}

// Rendering ------------------------------------------------------------------

namespace detail {

inline std::string join_fixed(const std::vector<double>& v) {
  if (v.empty()) return "-";
  if (v.size() == 1) return fixed3(v[0]);
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + fixed3(v[k]);
  return out + "]";
}

inline std::string join_full(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + full(v[k]);
  return out;
}

}  // namespace detail

inline void render_human(const TableReport& report, std::ostream& out,
                         bool color = false) {
  out << "Table " << report.table << ": " << report.title << "\n\n";
  std::vector<std::string> header{"row"};
  const bool has_structure = !report.rows.empty() && !report.rows[0].structure.empty();
  if (has_structure) header.push_back("structure");
  header.insert(header.end(), report.columns.begin(), report.columns.end());
  TextTable text(header);
  for (const ReportRow& row : report.rows) {
    std::vector<std::string> line{row.label};
    if (has_structure) line.push_back(row.structure);
    for (const ReportCell& cell : row.cells) {
      std::string s = detail::join_fixed(cell.reproduced);
      if (cell.status == CellStatus::kMismatch) s += " !";
      if (cell.status == CellStatus::kFlagged) s += " ~";
      line.push_back(s);
    }
    text.add(std::move(line));
  }
  text.render(out);

  bool any_mismatch = false;
  for (const ReportRow& row : report.rows) {
    for (const ReportCell& cell : row.cells) {
      if (cell.status != CellStatus::kMismatch) continue;
      if (!any_mismatch) out << "\nDifferences (!):\n";
      any_mismatch = true;
      out << "  row " << row.label << ' ' << cell.column << ": reproduced "
          << detail::join_fixed(cell.reproduced) << ", reference "
          << detail::join_fixed(cell.golden) << '\n';
    }
  }

  if (report.count(CellStatus::kFlagged) != 0) {
    out << "\nFLAGGED cells (~), excluded from pass/fail:\n";
    for (const ReportRow& row : report.rows) {
      for (const ReportCell& cell : row.cells) {
        if (cell.status != CellStatus::kFlagged) continue;
        out << "  row " << row.label << ' ' << cell.column << ": reproduced "
            << detail::join_fixed(cell.reproduced) << ", reference "
            << detail::join_fixed(cell.golden) << '\n';
      }
    }
    for (const auto& [column, note] : report.notes)
      if (!note.empty()) out << "  " << column << ": " << note << '\n';
  }

  if (!report.checks.empty()) {
    out << "\nChecks:\n";
    for (const auto& [name, ok] : report.checks)
      out << "  [" << (ok ? "ok" : "FAILED") << "] " << name << '\n';
  }

  out << "\n" << report.count(CellStatus::kMatch) << " cells match, "
      << report.count(CellStatus::kMismatch) << " differ, "
      << report.count(CellStatus::kFlagged) << " flagged (tolerance "
      << fixed3(kGoldenTolerance) << ")\n";
  const bool ok = report.pass();
  const char* verdict = ok ? "PASS" : "FAIL";
  if (color) {
    out << "result: " << (ok ? "\033[32m" : "\033[31m") << verdict << "\033[0m\n";
  } else {
    out << "result: " << verdict << '\n';
  }
}

inline void render_csv(const TableReport& report, std::ostream& out) {
  write_csv_row(out, {"table", "row", "structure", "column", "reproduced",
                      "reference", "status"});
  for (const ReportRow& row : report.rows) {
    for (const ReportCell& cell : row.cells) {
      write_csv_row(out, {std::to_string(report.table), row.label, row.structure,
                          cell.column, detail::join_full(cell.reproduced),
                          detail::join_full(cell.golden), to_string(cell.status)});
    }
  }
}

inline nlohmann::json to_json(const TableReport& report) {
  nlohmann::json doc;
  doc["table"] = report.table;
  doc["title"] = report.title;
  doc["rows"] = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::json r;
    r["row"] = row.label;
    if (!row.structure.empty()) r["structure"] = row.structure;
    r["cells"] = nlohmann::json::array();
    for (const ReportCell& cell : row.cells) {
      r["cells"].push_back({{"column", cell.column},
                            {"reproduced", cell.reproduced},
                            {"reference", cell.golden},
                            {"status", to_string(cell.status)}});
    }
    doc["rows"].push_back(std::move(r));
  }
  doc["flagged_notes"] = report.notes;
  doc["checks"] = nlohmann::json::array();
  for (const auto& [name, ok] : report.checks)
    doc["checks"].push_back({{"name", name}, {"ok", ok}});
  doc["summary"] = {{"match", report.count(CellStatus::kMatch)},
                    {"mismatch", report.count(CellStatus::kMismatch)},
                    {"flagged", report.count(CellStatus::kFlagged)},
                    {"tolerance", kGoldenTolerance},
                    {"pass", report.pass()}};
  return doc;
}

}  // namespace coopext::io

#endif  // COOPEXT_IO_TABLES_HPP
