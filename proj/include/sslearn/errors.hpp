// Copyright 2026 The sslearn Authors
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

namespace sslearn {

/// An operator or channel whose support does not fit the local window budget.
class UnsupportedSupport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expectation value needed by a constraint is absent from the data table.
class MissingData : public std::runtime_error {
 public:
  explicit MissingData(const std::string& pauli)
      : std::runtime_error("missing expectation value for Pauli " + pauli), pauli_(pauli) {}
  const std::string& pauli() const { return pauli_; }

 private:
  std::string pauli_;
};

/// A qubit has no constraint touching it, so its local cost is undefined.
class UndefinedQubit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SdpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OptimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

}  // namespace sslearn
