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
 * \file coopext/io/game_file.hpp
 *
 * \brief JSON game files.
 *
 * \code
 * {
 *   "schema_version": 1,
 *   "s0": 0.0,
 *   "tolerance": 1e-10,
 *   "max_iter": 500,
 *   "agents": [
 *     {"id": 1, "revenue": {"a": 10, "b": 6, "p": 0.5},
 *               "damage": {"c": 1, "q": 2}}
 *   ]
 * }
 * \endcode
 *
 * "s0", "tolerance" and "max_iter" are optional. Exponents may also be
 * written as a fraction string such as "1/3".
 */

#ifndef COOPEXT_IO_GAME_FILE_HPP
#define COOPEXT_IO_GAME_FILE_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "coopext/error.hpp"
#include "coopext/model.hpp"

namespace coopext::io {

inline constexpr int kGameSchemaVersion = 1;

namespace detail {

inline double read_number(const nlohmann::json& obj, const char* key,
                          const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field \"" + key + "\"");
  const nlohmann::json& v = obj.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    const auto slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double x = std::stod(text, &used);
        if (used == text.size()) return x;
      } else {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        std::size_t used_den = 0;
        const double x = std::stod(num, &used);
        const double y = std::stod(den, &used_den);
        if (used == num.size() && used_den == den.size() && y != 0.0)
          return x / y;
      }
    } catch (const std::logic_error&) {
    }
    throw ParseError(where + ": field \"" + key + "\" is not a number: \"" +
                     text + "\"");
  }
  throw ParseError(where + ": field \"" + key + "\" must be a number");
}

}  // namespace detail

inline Game game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("game file must hold a JSON object");
  if (!doc.contains("schema_version"))
    throw ParseError("game file lacks \"schema_version\"");
  if (!doc.at("schema_version").is_number_integer() ||
      doc.at("schema_version").get<int>() != kGameSchemaVersion)
    throw ParseError("unsupported schema_version " +
                     doc.at("schema_version").dump() + " (expected " +
                     std::to_string(kGameSchemaVersion) + ")");

  Game game;
  if (doc.contains("s0")) game.s0 = detail::read_number(doc, "s0", "game");
  if (doc.contains("tolerance"))
    game.tolerance = detail::read_number(doc, "tolerance", "game");
  if (doc.contains("max_iter")) {
    const nlohmann::json& v = doc.at("max_iter");
    if (!v.is_number_unsigned()) throw ParseError("max_iter must be a positive integer");
    game.max_iter = v.get<std::size_t>();
  }
  if (!doc.contains("agents") || !doc.at("agents").is_array())
    throw ParseError("game file lacks an \"agents\" array");

  std::size_t position = 0;
  for (const nlohmann::json& entry : doc.at("agents")) {
    ++position;
    const std::string where = "agent #" + std::to_string(position);
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    AgentModel agent;
    if (!entry.contains("id") || !entry.at("id").is_number_unsigned())
      throw ParseError(where + ": \"id\" must be a positive integer");
    agent.id = entry.at("id").get<std::size_t>();
    if (!entry.contains("revenue")) throw ParseError(where + ": missing \"revenue\"");
    if (!entry.contains("damage")) throw ParseError(where + ": missing \"damage\"");
    const nlohmann::json& u = entry.at("revenue");
    const nlohmann::json& d = entry.at("damage");
    agent.revenue.a = u.is_object() && u.contains("a")
                          ? detail::read_number(u, "a", where + " revenue")
                          : 0.0;
    agent.revenue.b = detail::read_number(u, "b", where + " revenue");
    agent.revenue.p = detail::read_number(u, "p", where + " revenue");
    agent.damage.c = detail::read_number(d, "c", where + " damage");
    agent.damage.q = detail::read_number(d, "q", where + " damage");
    game.agents.push_back(agent);
  }
  return game;
}

inline nlohmann::json game_to_json(const Game& game) {
  nlohmann::json doc;
  doc["schema_version"] = kGameSchemaVersion;
  doc["s0"] = game.s0;
  doc["tolerance"] = game.tolerance;
  doc["max_iter"] = game.max_iter;
  doc["agents"] = nlohmann::json::array();
  for (const AgentModel& agent : game.agents) {
    doc["agents"].push_back(
        {{"id", agent.id},
         {"revenue",
          {{"a", agent.revenue.a}, {"b", agent.revenue.b}, {"p", agent.revenue.p}}},
         {"damage", {{"c", agent.damage.c}, {"q", agent.damage.q}}}});
  }
  return doc;
}

inline Game parse_game(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("game file is not valid JSON: ") + e.what());
  }
  return game_from_json(doc);
}

inline Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

}  // namespace coopext::io

#endif  // COOPEXT_IO_GAME_FILE_HPP
