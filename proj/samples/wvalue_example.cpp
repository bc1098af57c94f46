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

// Builds a two-agent game in code and prints its w-value.

#include <iostream>

#include "coopext/coopext.hpp"

int main() {
  coopext::Game game;
  game.agents.push_back({1, {0.0, 4.0, 0.5}, {1.0, 2.0}});
  game.agents.push_back({2, {0.0, 2.0, 0.5}, {2.0, 2.0}});

  const coopext::WelfareAllocation w = coopext::w_value(game);
  const coopext::PriceSchedule& prices = w.basis.schedule;
  std::cout << "permit price t = " << prices.t << '\n';
  for (std::size_t i = 0; i < game.size(); ++i) {
    std::cout << "agent " << game.agents[i].id << ": permits "
              << w.basis.allocation[i] << ", emits " << w.basis.emissions[i]
              << ", w-value " << w.values[i] << '\n';
  }
  std::cout << "total welfare " << w.total() << '\n';
}
