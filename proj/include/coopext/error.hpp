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

#ifndef COOPEXT_ERROR_HPP
#define COOPEXT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace coopext {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent arguments (bad block index, dimension mismatch).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration was requested beyond its size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A welfare target cannot be realised by any permit allocation.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Text or file input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The equilibrium root finder failed. Carries the last bracket on the stock.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// The brute-force oracle failed to reach a stationary profile.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace coopext

#endif  // COOPEXT_ERROR_HPP
