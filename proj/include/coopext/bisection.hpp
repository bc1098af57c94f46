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

#ifndef COOPEXT_BISECTION_HPP
#define COOPEXT_BISECTION_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <sstream>

#include "coopext/error.hpp"

namespace coopext {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Root of a strictly decreasing function on [lo, hi].
///
/// Requires f(lo) > 0 >= f(hi). Stops once both the bracket width and |f|
/// are at most tol, or when the bracket can no longer be split in double
/// precision. Throws SolverError if the bracket does not change sign or
/// max_iter halvings are not enough.
template <typename F>
  requires std::invocable<F&, double>
RootResult bisect_decreasing(F&& f, double lo, double hi, double tol,
                             std::size_t max_iter) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo > 0.0) || !(f_hi <= 0.0)) {
    std::ostringstream msg;
    msg << "root is not bracketed: f(" << lo << ") = " << f_lo << ", f(" << hi
        << ") = " << f_hi;
    throw SolverError(msg.str(), lo, hi);
  }
  if (f_hi == 0.0) return {hi, 0.0, 0};

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      // Adjacent doubles: the bracket is as tight as it can get.
      const double f_mid = f(hi);
      return {hi, f_mid, iter};
    }
    const double f_mid = f(mid);
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol && std::abs(f_mid) <= tol) return {mid, f_mid, iter};
  }
  std::ostringstream msg;
  msg << "bisection did not converge in " << max_iter << " iterations";
  throw SolverError(msg.str(), lo, hi);
}

}  // namespace coopext

#endif  // COOPEXT_BISECTION_HPP
