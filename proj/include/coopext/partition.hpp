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
 * \file coopext/partition.hpp
 *
 * \brief Coalition structures, i.e. set partitions of the agents.
 *
 * Agents are addressed by their 0-based position in the game. The textual
 * notation "[1,2],[3],[4]" uses 1-based positions.
 */

#ifndef COOPEXT_PARTITION_HPP
#define COOPEXT_PARTITION_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coopext/error.hpp"

namespace coopext {

using Block = std::vector<std::size_t>;

/// A partition of {0, ..., n-1} held in canonical form: every block sorted,
/// blocks ordered by their smallest member. Equality is structural.
class CoalitionStructure {
 public:
  CoalitionStructure() = default;

  /// Validates disjointness, coverage and non-emptiness, then canonicalises.
  CoalitionStructure(std::vector<Block> blocks, std::size_t agent_count)
      : blocks_(std::move(blocks)), agent_count_(agent_count) {
    std::vector<bool> seen(agent_count_, false);
    for (Block& block : blocks_) {
      if (block.empty()) throw ArgumentError("coalition block is empty");
      for (std::size_t i : block) {
        if (i >= agent_count_)
          throw ArgumentError("agent " + std::to_string(i + 1) +
                              " is out of range");
        if (seen[i])
          throw ArgumentError("agent " + std::to_string(i + 1) +
                              " appears in more than one block");
        seen[i] = true;
      }
      std::sort(block.begin(), block.end());
    }
    for (std::size_t i = 0; i < agent_count_; ++i) {
      if (!seen[i])
        throw ArgumentError("agent " + std::to_string(i + 1) +
                            " is not covered by any block");
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& x, const Block& y) { return x.front() < y.front(); });
  }

  static CoalitionStructure singletons(std::size_t agent_count) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < agent_count; ++i) blocks.push_back({i});
    return {std::move(blocks), agent_count};
  }

  static CoalitionStructure grand_coalition(std::size_t agent_count) {
    Block all(agent_count);
    for (std::size_t i = 0; i < agent_count; ++i) all[i] = i;
    return {{std::move(all)}, agent_count};
  }

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t agent_count() const noexcept { return agent_count_; }
  const Block& block(std::size_t k) const { return blocks_.at(k); }

  /// Index of the block containing agent i.
  std::size_t block_of(std::size_t i) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (std::binary_search(blocks_[k].begin(), blocks_[k].end(), i)) return k;
    }
    throw ArgumentError("agent " + std::to_string(i + 1) + " is out of range");
  }

  bool is_grand_coalition() const noexcept { return blocks_.size() == 1; }
  bool is_singletons() const noexcept {
    return blocks_.size() == agent_count_;
  }

  /// "[1,2],[3],[4]"
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (k) out += ',';
      out += '[';
      for (std::size_t m = 0; m < blocks_[k].size(); ++m) {
        if (m) out += ',';
        out += std::to_string(blocks_[k][m] + 1);
      }
      out += ']';
    }
    return out;
  }

  friend bool operator==(const CoalitionStructure&,
                         const CoalitionStructure&) = default;

 private:
  std::vector<Block> blocks_;
  std::size_t agent_count_ = 0;
};

/// Parses "[1,2],[3],[4]" (whitespace tolerated) into a structure over
/// agent_count agents. Syntax errors throw ParseError; overlaps, gaps and
/// out-of-range ids throw ArgumentError.
inline CoalitionStructure parse_partition(std::string_view text,
                                          std::size_t agent_count) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("bad partition \"" + std::string(text) + "\": " + what +
                      " at offset " + std::to_string(pos));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw fail(std::string("expected '") + c + "'");
    ++pos;
  };

  std::vector<Block> blocks;
  skip_ws();
  if (pos == text.size()) throw fail("empty partition");
  while (true) {
    expect('[');
    Block block;
    while (true) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (start == pos) throw fail("expected agent number");
      if (pos - start > 9) throw fail("agent number too large");
      const std::size_t id = std::stoul(std::string(text.substr(start, pos - start)));
      if (id == 0) throw ArgumentError("agent numbers start at 1");
      block.push_back(id - 1);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(']');
    blocks.push_back(std::move(block));
    skip_ws();
    if (pos == text.size()) break;
    expect(',');
  }
  return {std::move(blocks), agent_count};
}

inline constexpr std::size_t kMaxPartitionAgents = 12;

/// Every partition of n agents, each exactly once, enumerated as restricted
/// growth strings in lexicographic order.
inline std::vector<CoalitionStructure> all_partitions(std::size_t n) {
  if (n < 1 || n > kMaxPartitionAgents)
    throw SizeError("partition enumeration supports 1.." +
                    std::to_string(kMaxPartitionAgents) + " agents, got " +
                    std::to_string(n));
  std::vector<CoalitionStructure> out;
  // label[i] is the block of agent i; label[i] <= 1 + max(label[0..i-1]).
  std::vector<std::size_t> label(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  while (true) {
    std::vector<Block> blocks(prefix_max[n - 1] + 1);
    for (std::size_t i = 0; i < n; ++i) blocks[label[i]].push_back(i);
    out.emplace_back(std::move(blocks), n);

    std::size_t i = n - 1;
    while (i > 0 && label[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++label[i];
    prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      label[k] = 0;
      prefix_max[k] = prefix_max[i];
    }
  }
  return out;
}

/// {C} together with every agent outside C as a singleton.
inline CoalitionStructure gamma_structure(const Block& coalition,
                                          std::size_t agent_count) {
  if (coalition.empty()) throw ArgumentError("deviating coalition is empty");
  std::vector<bool> inside(agent_count, false);
  for (std::size_t i : coalition) {
    if (i >= agent_count)
      throw ArgumentError("agent " + std::to_string(i + 1) + " is out of range");
    if (inside[i])
      throw ArgumentError("agent " + std::to_string(i + 1) + " listed twice");
    inside[i] = true;
  }
  std::vector<Block> blocks{coalition};
  for (std::size_t i = 0; i < agent_count; ++i) {
    if (!inside[i]) blocks.push_back({i});
  }
  return {std::move(blocks), agent_count};
}

/// Unions blocks i and j (indices into blocks()).
inline CoalitionStructure merge_blocks(const CoalitionStructure& p,
                                       std::size_t i, std::size_t j) {
  if (i == j) throw ArgumentError("cannot merge a block with itself");
  if (i >= p.block_count() || j >= p.block_count())
    throw ArgumentError("block index out of range");
  std::vector<Block> blocks;
  Block merged = p.block(i);
  merged.insert(merged.end(), p.block(j).begin(), p.block(j).end());
  blocks.push_back(std::move(merged));
  for (std::size_t k = 0; k < p.block_count(); ++k) {
    if (k != i && k != j) blocks.push_back(p.block(k));
  }
  return {std::move(blocks), p.agent_count()};
}

}  // namespace coopext

#endif  // COOPEXT_PARTITION_HPP
