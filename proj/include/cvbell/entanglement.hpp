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

#include "cvbell/standard_form.hpp"

namespace cvbell {

/// Symplectic eigenvalue of a separable boundary / vacuum variance.
inline constexpr double kVacuumVariance = 0.5;
/// Slack on the mixedness inequalities.
inline constexpr double kMixednessSlack = 1e-9;

struct SimonTest {
  double lhs = 0.0;  // 4 (nm - c1²)(nm - c2²)
  double rhs = 0.0;  // n² + m² + 2|c1 c2| - 1/4
  bool entangled = false;  // lhs < rhs; equality counts as separable
};

SimonTest simon_criterion(const StandardForm& sf);

/// Smallest symplectic eigenvalue of the partially transposed state
/// (c2 -> -c2). Throws Error{NumericalDomain} when the discriminant is
/// negative beyond round-off.
double ppt_symplectic_eigenvalue(const StandardForm& sf);

/// max(0, -ln(2 ν̃))
double log_negativity(const StandardForm& sf);

struct MixednessBounds {
  bool purity_bound_ok = false;   // 4 (nm - c1²)(nm - c2²) >= 1/4
  bool product_bound_ok = false;  // nm - |c1 c2| >= 1/4
};

MixednessBounds mixedness_bounds(const StandardForm& sf);

struct EntanglementReport {
  double simon_lhs = 0.0;
  double simon_rhs = 0.0;
  bool entangled = false;
  double nu_tilde = 0.0;
  double log_negativity = 0.0;
  double purity = 0.0;
};

EntanglementReport analyze_entanglement(const StandardForm& sf);

}  // namespace cvbell
