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

// Test-only reference computations. Nothing here calls into the library's
// numerical paths; each routine is a deliberately plain, independent
// implementation used to freeze or cross-check expected values.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace cvbell::oracle {

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 from_eigen(const Eigen::Matrix4d& m) {
  Mat4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = m(r, c);
  return out;
}

/// Gauss-Jordan elimination with partial pivoting.
inline Mat4 gauss_jordan_inverse(Mat4 a) {
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double p = a[col][col];
    for (int c = 0; c < 4; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (int c = 0; c < 4; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Laplace expansion along the first row.
inline double cofactor_det(const Mat4& a) {
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    std::array<std::array<double, 3>, 3> minor{};
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = a[r][c];
      }
    }
    det += ((j % 2 == 0) ? 1.0 : -1.0) * a[0][j] * det3(minor);
  }
  return det;
}

/// u^T M u
inline double quadratic_form(const Mat4& m, const std::array<double, 4>& u) {
  double s = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s += u[r] * m[r][c] * u[c];
  return s;
}

inline Eigen::Matrix4d omega() {
  Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
  o(0, 1) = o(2, 3) = 1.0;
  o(1, 0) = o(3, 2) = -1.0;
  return o;
}

/// Smallest eigenvalue (real part) of V + iΩ/2 from a general complex eigensolver.
inline double min_uncertainty_eigenvalue(const Eigen::Matrix4d& v) {
  const Eigen::Matrix4cd h = v.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * omega().cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(h);
  double lo = 1e300;
  for (int i = 0; i < 4; ++i) lo = std::min(lo, solver.eigenvalues()(i).real());
  return lo;
}

/// Symplectic spectrum: |eigenvalues| of iΩV, smallest first.
inline std::pair<double, double> symplectic_eigenvalues(const Eigen::Matrix4d& v) {
  Eigen::EigenSolver<Eigen::Matrix4d> solver(omega() * v);
  std::array<double, 4> mags{};
  for (int i = 0; i < 4; ++i) mags[i] = std::abs(solver.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  return {mags[0], mags[2]};
}

/// Partial transpose of the signal mode: P_S -> -P_S.
inline Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v) {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t(3, 3) = -1.0;
  return t * v * t;
}

/// Brute-force maximum over the two scaled amplitudes (u = sqrt(m) alpha_I,
/// v = sqrt(n) alpha_S) of 1 + e^{-u²/2} + e^{-v²/2} - e^{-(u²+v²)/2 - x u v},
/// by a dense grid followed by a shrinking local grid.
inline double brute_force_bracket(double x) {
  const auto f = [x](double u, double v) {
    return 1.0 + std::exp(-0.5 * u * u) + std::exp(-0.5 * v * v) - std::exp(-0.5 * (u * u + v * v) - x * u * v);
  };
  double best = -1.0, bu = 0.0, bv = 0.0;
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 400; ++j) {
      const double u = 4.0 * i / 400.0, v = 4.0 * j / 400.0;
      const double val = f(u, v);
      if (val > best) best = val, bu = u, bv = v;
    }
  }
  double h = 0.01;
  for (int round = 0; round < 40; ++round) {
    const double cu = bu, cv = bv;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double u = std::max(0.0, cu + i * h / 10.0), v = std::max(0.0, cv + j * h / 10.0);
        const double val = f(u, v);
        if (val > best) best = val, bu = u, bv = v;
      }
    }
    h /= 2.0;
  }
  return best;
}

}  // namespace cvbell::oracle
