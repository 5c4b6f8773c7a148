// Copyright 2026 The clparity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLPARITY_ERRORS_HPP_
#define CLPARITY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace clparity {

// Input vectors, supports and parameter shapes disagree.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration requested beyond the supported dimension.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A construction was asked for outside its mathematical preconditions
// (odd k for the theory initializations, k > d/2 for the hinge scheme, ...).
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration. `field` names the offending JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace clparity

#endif  // CLPARITY_ERRORS_HPP_
