// Copyright 2026 The qsolver Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qsolver {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad problem text, mismatched lengths, invalid indices.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A gate name, arity, or parameter list that the gate library rejects.
class GateError : public Error {
 public:
  using Error::Error;
};

/// Zero-norm vector where a quantum state was required.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// The external SMT executable could not be located or started.
class BackendNotFoundError : public Error {
 public:
  using Error::Error;
};

/// The external SMT executable produced output we could not interpret.
class BackendOutputError : public Error {
 public:
  BackendOutputError(const std::string& what, std::string raw_output)
      : Error(what), raw_output_(std::move(raw_output)) {}

  const std::string& raw_output() const noexcept { return raw_output_; }

 private:
  std::string raw_output_;
};

}  // namespace qsolver
