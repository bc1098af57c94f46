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

// Umbrella header for the solver library (without the CLI and file IO).

#ifndef COOPEXT_COOPEXT_HPP
#define COOPEXT_COOPEXT_HPP

#include "coopext/bisection.hpp"
#include "coopext/equilibrium.hpp"
#include "coopext/error.hpp"
#include "coopext/model.hpp"
#include "coopext/oracle.hpp"
#include "coopext/partition.hpp"
#include "coopext/pricing.hpp"
#include "coopext/solution.hpp"

#endif  // COOPEXT_COOPEXT_HPP
