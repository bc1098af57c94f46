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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "coopext/partition.hpp"

namespace coopext {
namespace {

// Bell numbers by B(n+1) = sum_k C(n,k) B(k).
std::vector<unsigned long> bell_numbers(std::size_t upto) {
  std::vector<unsigned long> bell{1};
  for (std::size_t n = 0; n < upto; ++n) {
    unsigned long next = 0;
    unsigned long binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      next += binom * bell[k];
      binom = binom * (n - k) / (k + 1);
    }
    bell.push_back(next);
  }
  return bell;
}

TEST(PartitionTest, CountsFollowBellRecurrence) {
  const auto bell = bell_numbers(9);
  EXPECT_EQ(all_partitions(1).size(), 1u);
  EXPECT_EQ(all_partitions(4).size(), 15u);
  EXPECT_EQ(bell[5], 52u);
  EXPECT_EQ(all_partitions(5).size(), 52u);
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(all_partitions(n).size(), bell[n]) << n;
}

TEST(PartitionTest, NoDuplicatesAndCanonicalBlocks) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<std::string> seen;
    for (const CoalitionStructure& p : all_partitions(n)) {
      EXPECT_TRUE(seen.insert(p.to_string()).second) << p.to_string();
      for (std::size_t k = 1; k < p.block_count(); ++k)
        EXPECT_LT(p.block(k - 1).front(), p.block(k).front());
      for (const Block& b : p.blocks())
        EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
      EXPECT_EQ(parse_partition(p.to_string(), n), p);
    }
  }
}

TEST(PartitionTest, SizeGuard) {
  EXPECT_THROW(all_partitions(0), SizeError);
  EXPECT_THROW(all_partitions(13), SizeError);
}

TEST(PartitionTest, GammaStructure) {
  EXPECT_EQ(gamma_structure({0, 1}, 4).to_string(), "[1,2],[3],[4]");
  EXPECT_EQ(gamma_structure({0, 1, 2, 3}, 4), CoalitionStructure::grand_coalition(4));
  EXPECT_EQ(gamma_structure({2}, 4), CoalitionStructure::singletons(4));
  EXPECT_EQ(gamma_structure({3, 1}, 4).to_string(), "[1],[2,4],[3]");
  EXPECT_THROW(gamma_structure({}, 4), ArgumentError);
  EXPECT_THROW(gamma_structure({4}, 4), ArgumentError);
}

TEST(PartitionTest, GammaStructureBlockCount) {
  for (unsigned mask = 1; mask < 32; ++mask) {
    Block c;
    for (std::size_t i = 0; i < 5; ++i)
      if (mask & (1u << i)) c.push_back(i);
    EXPECT_EQ(gamma_structure(c, 5).block_count(), 5 - c.size() + 1);
  }
}

TEST(PartitionTest, MergeBlocks) {
  const auto singles = CoalitionStructure::singletons(4);
  EXPECT_EQ(merge_blocks(singles, 0, 1).to_string(), "[1,2],[3],[4]");
  const auto pairs = parse_partition("[1,2],[3,4]", 4);
  EXPECT_EQ(merge_blocks(pairs, 0, 1), CoalitionStructure::grand_coalition(4));
  EXPECT_EQ(merge_blocks(pairs, 1, 0), CoalitionStructure::grand_coalition(4));
  EXPECT_THROW(merge_blocks(pairs, 1, 1), ArgumentError);
  EXPECT_THROW(merge_blocks(pairs, 0, 2), ArgumentError);
}

TEST(PartitionTest, ParsesReferenceLabels) {
  const auto p = parse_partition("[3], [4], [1,2]", 4);
  EXPECT_EQ(p.to_string(), "[1,2],[3],[4]");
  EXPECT_EQ(parse_partition(" [1, 2, 3, 4] ", 4).block_count(), 1u);
  EXPECT_EQ(p.block_of(1), 0u);
  EXPECT_EQ(p.block_of(3), 2u);
}

TEST(PartitionTest, RejectsMalformedText) {
  EXPECT_THROW(parse_partition("[1,2],[2]", 3), ArgumentError);       // overlap
  EXPECT_THROW(parse_partition("[1,2],[3]", 4), ArgumentError);       // gap
  EXPECT_THROW(parse_partition("[1,2],[5],[3],[4]", 4), ArgumentError);
  EXPECT_THROW(parse_partition("[0],[1]", 2), ArgumentError);
  EXPECT_THROW(parse_partition("", 2), ParseError);
  EXPECT_THROW(parse_partition("[1,2", 2), ParseError);
  EXPECT_THROW(parse_partition("[1],,[2]", 2), ParseError);
  EXPECT_THROW(parse_partition("[]", 1), ParseError);
  EXPECT_THROW(parse_partition("[1][2]", 2), ParseError);
  EXPECT_THROW(parse_partition("[a]", 1), ParseError);
}

}  // namespace
}  // namespace coopext
