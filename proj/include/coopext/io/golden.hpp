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
 * \file coopext/io/golden.hpp
 *
 * \brief Reference tables stored as CSV.
 *
 * Lines starting with '#' are comments, except two directives:
 *
 *   # flagged: col_a,col_b      columns known not to be reproducible
 *   # note: col_a: free text    explanation printed with the report
 *
 * A cell holds zero or more numbers separated by spaces; an empty cell means
 * the reference has no value there.
 */

#ifndef COOPEXT_IO_GOLDEN_HPP
#define COOPEXT_IO_GOLDEN_HPP

#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coopext/error.hpp"

namespace coopext::io {

/// A reference fixture is missing or unreadable.
class FixtureError : public Error {
 public:
  using Error::Error;
};

struct GoldenTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::set<std::string> flagged;
  std::map<std::string, std::string> notes;

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    throw ParseError("reference table has no column \"" + name + "\"");
  }
};

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Splits one CSV record; double quotes protect commas.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV line: " + line);
  out.push_back(trim(cell));
  return out;
}

inline std::vector<double> parse_cell(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(token, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != token.size())
      throw ParseError("reference cell \"" + text + "\" is not numeric");
    out.push_back(x);
  }
  return out;
}

inline GoldenTable parse_golden(std::istream& in) {
  GoldenTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("flagged:", 0) == 0) {
        for (const std::string& col : split_csv_line(body.substr(8)))
          if (!col.empty()) table.flagged.insert(col);
      } else if (body.rfind("note:", 0) == 0) {
        const std::string rest = trim(body.substr(5));
        const auto colon = rest.find(':');
        if (colon != std::string::npos)
          table.notes[trim(rest.substr(0, colon))] = trim(rest.substr(colon + 1));
      }
      continue;
    }
    std::vector<std::string> cells = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size())
        throw ParseError("reference row has " + std::to_string(cells.size()) +
                         " cells, header has " +
                         std::to_string(table.header.size()));
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) throw ParseError("reference table has no header");
  return table;
}

inline GoldenTable load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("reference table not found: " + path);
  return parse_golden(in);
}

}  // namespace coopext::io

#endif  // COOPEXT_IO_GOLDEN_HPP
