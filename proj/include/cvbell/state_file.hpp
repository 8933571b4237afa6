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

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "cvbell/covariance.hpp"
#include "cvbell/standard_form.hpp"

namespace cvbell {

/// Quadrature ordering recorded in matrix-form state files.
inline constexpr const char* kOrdering = "qI,pI,qS,pS";

/// On-disk state. Exactly one of `matrix` / `standard_form` is set.
///
///   {"ordering": "qI,pI,qS,pS", "matrix": [[...] x4], "meta": {...}}
///   {"standard_form": {"n": .., "m": .., "c1": .., "c2": ..}, "meta": {...}}
struct StateFile {
  std::optional<Matrix4> matrix;
  std::optional<StandardForm> standard_form;
  nlohmann::json meta = nlohmann::json::object();

  /// Validated covariance of whichever representation is present.
  CovarianceMatrix covariance() const;
};

/// Throws Error{InvalidArgument} on schema violations.
StateFile state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const StateFile& state);

StateFile read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const StateFile& state);

/// n = m = cosh(2r)/2, c1 = -c2 = sinh(2r)/2.
StandardForm tmsv_standard_form(double r);

/// Two-mode squeezed vacuum passed through a thermal channel: with eta = 1,
/// n_th is added to every variance; otherwise V -> eta V + (1 - eta)(n_th + 1/2) I.
Matrix4 tmsv_matrix(double r, double n_th, double eta);

}  // namespace cvbell
