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

#include <cstdint>

#include "cvbell/covariance.hpp"

namespace cvbell {

/// Local normal form of a two-mode covariance matrix:
///
///     [ n  .  c1 .  ]
///     [ .  n  .  c2 ]
///     [ c1 .  m  .  ]
///     [ .  c2 .  m  ]
///
/// Values produced by reduce() follow the sign canon c1 >= |c2|.
struct StandardForm {
  double n = 0.5;
  double m = 0.5;
  double c1 = 0.0;
  double c2 = 0.0;

  double c_tilde() const;  // max(|c1|, |c2|)
  double c() const;        // sqrt(c1^2 + c2^2)
  double phi() const;      // atan2(c2, c1)
  double x() const;        // c_tilde / sqrt(nm)
  double x_prime() const;  // min(|c1|, |c2|) / sqrt(nm)
  double det_q() const;    // nm - c1^2, determinant of the Q-quadrature block
  double det_p() const;    // nm - c2^2, determinant of the P-quadrature block
  double det() const;      // det_q() * det_p()

  Matrix4 matrix() const;

  bool operator==(const StandardForm&) const = default;
};

/// Builds and validates the covariance matrix of a standard form.
CovarianceMatrix to_covariance(const StandardForm& sf);

/// A local symplectic map S_I ⊕ S_S (one single-mode symplectic per party).
struct LocalSymplectic {
  Matrix2 idler = Matrix2::Identity();
  Matrix2 signal = Matrix2::Identity();

  Matrix4 matrix() const;
  /// Max entrywise deviation of S Ω₂ Sᵀ from Ω₂ over both blocks.
  double symplectic_defect() const;
};

/// [[cos t, -sin t], [sin t, cos t]]
Matrix2 rotation(double theta);
/// diag(s, 1/s)
Matrix2 squeezer(double s);
/// R(theta1) · diag(e^z, e^-z) · R(theta2)
Matrix2 local_symplectic_block(double theta1, double z, double theta2);

struct Reduction {
  StandardForm form;
  LocalSymplectic transform;  // S with S V Sᵀ == form.matrix()
};

/// Rotates each mode onto its principal axes, squeezes each local block to a
/// multiple of the identity, diagonalizes the cross block with one rotation
/// per mode, then canonicalizes signs.
Reduction reduce(const CovarianceMatrix& v);

/// (S_I ⊕ S_S) V (S_I ⊕ S_S)ᵀ, validated.
CovarianceMatrix apply_local_symplectic(const CovarianceMatrix& v, const LocalSymplectic& t);

/// Each block is R(θ₁)·diag(e^z, e^-z)·R(θ₂), θ uniform on [0, 2π),
/// z uniform on [-max_squeeze, max_squeeze]. Deterministic in `seed`.
LocalSymplectic random_local_symplectic(std::uint64_t seed, double max_squeeze);

/// Equivalent form with c1 >= |c2|, reached by a joint quarter-turn of both
/// modes (swaps c1 and c2) and a half-turn of the idler (flips both signs).
StandardForm canonicalize_signs(const StandardForm& sf);

}  // namespace cvbell
