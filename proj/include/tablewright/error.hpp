// Copyright 2026 The Tablewright Authors
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

#ifndef TABLEWRIGHT_ERROR_HPP_
#define TABLEWRIGHT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tablewright {

// Base class for every error the library reports. Each subclass maps onto one
// of the stable CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Malformed input: bad JSON, schema violations, unsupported variants.
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class IoError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// A conversion would exceed a configured entry, key-width or register budget.
class BudgetError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace tablewright

#endif  // TABLEWRIGHT_ERROR_HPP_
