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

#include "cvbell/covariance.hpp"
#include "cvbell/standard_form.hpp"

namespace cvbell {

/// Local-realism bound of the Wigner-form CHSH combination.
inline constexpr double kLocalBound = 2.0;

struct BellReport {
  double bmax = 0.0;
  double a_star = 1.0;        // optimal A = exp(alpha_I^2 / 2)
  double alpha_i_star = 0.0;  // scaled idler amplitude at the optimum
  double x = 0.0;
  double c_tilde = 0.0;
  bool nonlocal = false;      // bmax > 2, strictly
  double margin = 0.0;        // bmax - 2
  bool converged = true;      // numeric search only; always true for the closed form
};

/// Polar coordinates in the scaled phase space, where
/// Q̃_I = Q_I / sqrt(nm - c1²), P̃_I = P_I / sqrt(nm - c2²) and likewise for S.
struct BellEvaluationPoint {
  double alpha_i = 0.0;
  double alpha_s = 0.0;
  double theta_i = 0.0;
  double theta_s = 0.0;
};

/// π²·[W(0) + W(u_I0) + W(u_0S) − W(u)] with the Wigner inverse cached.
class BellFunction {
 public:
  explicit BellFunction(const CovarianceMatrix& v) : wigner_(v) {}

  double operator()(const PhasePoint& u) const;

 private:
  WignerFunction wigner_;
};

double bell_function(const CovarianceMatrix& v, const PhasePoint& u);

PhasePoint scaled_point_to_phase(const StandardForm& sf, const BellEvaluationPoint& p);

/// Bell function already maximized over both angles at fixed (alpha_I, alpha_S).
double bell_over_angles(const StandardForm& sf, double alpha_i, double alpha_s);

/// Bracket M(A) = 1 + 2A^-m - A^-(2m + 2c̃ sqrt(m/n)) along the symmetric ray
/// alpha_S = sqrt(m/n) alpha_I, with A = exp(alpha_I^2 / 2).
double bell_profile(const StandardForm& sf, double a);

/// 1 + (1/(1+x))^(1/(1+2x)) (1+2x)/(1+x): the optimal bracket of a pure-state
/// prefactor, as a function of x = c̃/sqrt(nm) alone.
double optimal_bracket(double x);

BellReport bell_max_closed_form(const StandardForm& sf);

struct OptimizerConfig {
  int grid_points = 9;          // per amplitude axis, over [0, alpha_max]
  double alpha_max = 4.0;
  int restarts = 3;             // best grid points handed to the local polish
  double size_tolerance = 1e-9; // simplex size at convergence
  int max_iterations = 5000;    // per polish
  // A polish also counts as converged once the best value improved by less
  // than stall_tolerance (relative) over stall_iterations iterations; flat
  // valleys of the Bell function keep the simplex from shrinking.
  int stall_iterations = 200;
  double stall_tolerance = 1e-15;
};

/// Multi-start direct search over the full phase space, evaluated through the
/// Wigner function of the reconstructed covariance matrix. Independent of the
/// closed form; used as its oracle.
BellReport bell_max_numeric(const StandardForm& sf, const OptimizerConfig& cfg = {});

struct NonlocalityTest {
  bool nonlocal = false;  // lhs > rhs
  double lhs = 0.0;       // optimal_bracket(x)^2 / 16
  double rhs = 0.0;       // 4 (nm - c1²)(nm - c2²)
};

NonlocalityTest is_nonlocal(const StandardForm& sf);

}  // namespace cvbell
