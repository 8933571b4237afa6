// Copyright 2026 The cvbell Authors
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

namespace cvbell {

enum class ErrorKind {
  NotSymmetric,
  Unphysical,
  SingularCovariance,
  NumericalDomain,
  SamplerStarvation,
  AssertionFailure,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. `value()` carries the
/// quantity that tripped the check (asymmetry, smallest eigenvalue,
/// determinant, offending x, ...), or NaN when there is none.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value);

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace cvbell
