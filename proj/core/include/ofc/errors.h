// Copyright 2026 The ofc-pointing Authors
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

#ifndef OFC_ERRORS_H_
#define OFC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ofc {

// Base class for every error raised by the library. `code()` is a short
// machine-readable tag used by the CLI for its single-line error output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Dimension mismatches and other broken preconditions.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error("contract", what) {}
};

// A model or fit parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  ParameterError(std::string field, const std::string& what)
      : Error("parameter", field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Singular systems, non-PSD inputs, non-finite intermediate values.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

// The LQG coordinate descent produced a non-finite objective.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(int iteration, const std::string& what)
      : NumericalError("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Malformed corpus files and other bad external input.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input", what) {}
};

}  // namespace ofc

#endif  // OFC_ERRORS_H_
