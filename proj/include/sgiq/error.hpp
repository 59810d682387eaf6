// Copyright 2026 The SGIQ Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sgiq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form model was evaluated outside its range of validity
// (e.g. a far-field transmissivity >= 1).
class NonPhysicalError : public Error {
 public:
  using Error::Error;
};

// An argument violates a mathematical precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative purification cannot reach the target fidelity.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

// A scenario or run configuration is inconsistent or infeasible.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Vector/instance sizes do not agree.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search exceeded its work budget.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A schedule does not fit the graph it is being executed on.
class InfeasibleScheduleError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgiq
