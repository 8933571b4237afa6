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

#include <Eigen/Core>

namespace cvbell {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

/// Absolute asymmetry absorbed by symmetrization in validate_covariance.
inline constexpr double kSymmetryTolerance = 1e-12;
/// Smallest admissible eigenvalue of V + iΩ/2.
inline constexpr double kPhysicalityTolerance = 1e-10;

/// Displacement in two-mode phase space, ordered (Q_I, P_I, Q_S, P_S).
struct PhasePoint {
  double q_i = 0.0;
  double p_i = 0.0;
  double q_s = 0.0;
  double p_s = 0.0;

  Vector4 vector() const { return {q_i, p_i, q_s, p_s}; }
  bool finite() const;

  /// Signal coordinates zeroed.
  PhasePoint idler_only() const { return {q_i, p_i, 0.0, 0.0}; }
  /// Idler coordinates zeroed.
  PhasePoint signal_only() const { return {0.0, 0.0, q_s, p_s}; }
};

/// [[0, 1], [-1, 0]]
const Matrix2& single_mode_symplectic_form();
/// Two-mode symplectic form, block-diagonal in single-mode forms.
const Matrix4& symplectic_form();

/// Smallest eigenvalue of the Hermitian matrix V + iΩ/2.
double min_uncertainty_eigenvalue(const Matrix4& v);

/// A validated two-mode covariance matrix (ħ = 1, vacuum variance 1/2).
/// Instances are only produced by validate_covariance and are immutable.
class CovarianceMatrix {
 public:
  const Matrix4& matrix() const noexcept { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }
  double determinant() const;

  bool operator==(const CovarianceMatrix& other) const { return m_ == other.m_; }

 private:
  explicit CovarianceMatrix(const Matrix4& m) : m_(m) {}
  friend CovarianceMatrix validate_covariance(const Matrix4& raw);

  Matrix4 m_;
};

/// Checks finiteness, symmetry (symmetrizing residual round-off), the
/// uncertainty relation V + iΩ/2 >= 0 and det V > 0.
/// Throws Error{NotSymmetric | Unphysical | SingularCovariance | InvalidArgument}.
CovarianceMatrix validate_covariance(const Matrix4& raw);

/// Tr(rho^2) = 1 / (4 sqrt(det V)).
double purity(const CovarianceMatrix& v);

/// Gaussian Wigner function with the inverse and normalization cached, for
/// repeated evaluation against one state.
class WignerFunction {
 public:
  explicit WignerFunction(const CovarianceMatrix& v);

  double operator()(const PhasePoint& u) const;
  /// -1/2 u^T V^{-1} u
  double exponent(const PhasePoint& u) const;
  const Matrix4& inverse() const noexcept { return inverse_; }
  double normalization() const noexcept { return norm_; }

 private:
  Matrix4 inverse_;
  double norm_;
};

/// (1 / (4 pi^2 sqrt(det V))) exp(-1/2 u^T V^{-1} u).
double wigner(const CovarianceMatrix& v, const PhasePoint& u);

struct Blocks {
  Matrix2 idler;   // V_I, top-left
  Matrix2 signal;  // V_S, bottom-right
  Matrix2 cross;   // V_IS, top-right
};

Blocks blocks(const CovarianceMatrix& v);
Matrix4 reassemble(const Blocks& b);

/// Determinants left unchanged by local symplectic transformations.
struct LocalInvariants {
  double det_idler;
  double det_signal;
  double det_cross;
  double det_total;
};

LocalInvariants local_invariants(const CovarianceMatrix& v);

}  // namespace cvbell
