// Copyright 2026 The Authors.
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

#ifndef SEGRE_ERROR_HPP_
#define SEGRE_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace segre {

// Malformed input: wrong arity, dimension mismatch, zero vectors, bad JSON.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The field does not have enough points for a requested configuration.
class FieldTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction produced a set that does not have its claimed invariants.
class SelfCheckFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An enumeration would exceed the configured instance budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t requested,
                 std::uint64_t budget)
      : std::runtime_error(what), requested_(requested), budget_(budget) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

}  // namespace segre

#endif  // SEGRE_ERROR_HPP_
