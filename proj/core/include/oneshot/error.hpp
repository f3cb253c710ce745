// Copyright 2026 The Oneshot Authors
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

#ifndef ONESHOT_ERROR_HPP_
#define ONESHOT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace oneshot {

// Failure classes surfaced by the library. The CLI maps input and validation
// problems to exit code 1 and resource caps to exit code 3.
enum class Errc {
  kAsymmetricMatrix,
  kNonzeroDiagonal,
  kTriangleViolation,
  kDegenerateSpace,
  kDimensionMismatch,
  kRelaxedConditionViolated,
  kInstanceTooLarge,
  kClassTooLarge,
  kGridTooFine,
  kNotInClass,
  kEmptyConstraintSet,
  kInfeasible,
  kUnbounded,
  kDomainError,
  kBadInput,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

// Caps on enumeration, DP state, or instance size (CLI exit code 3).
bool is_resource_cap(Errc code);

}  // namespace oneshot

#endif  // ONESHOT_ERROR_HPP_
