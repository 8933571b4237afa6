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

#include "cvbell/covariance.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cvbell/errors.hpp"

namespace cvbell {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::Unphysical: return "Unphysical";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::NumericalDomain: return "NumericalDomain";
    case ErrorKind::SamplerStarvation: return "SamplerStarvation";
    case ErrorKind::AssertionFailure: return "AssertionFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

bool PhasePoint::finite() const {
  return std::isfinite(q_i) && std::isfinite(p_i) && std::isfinite(q_s) && std::isfinite(p_s);
}

const Matrix2& single_mode_symplectic_form() {
  static const Matrix2 omega = (Matrix2() << 0.0, 1.0, -1.0, 0.0).finished();
  return omega;
}

const Matrix4& symplectic_form() {
  static const Matrix4 omega = [] {
    Matrix4 o = Matrix4::Zero();
    o.topLeftCorner<2, 2>() = single_mode_symplectic_form();
    o.bottomRightCorner<2, 2>() = single_mode_symplectic_form();
    return o;
  }();
  return omega;
}

double min_uncertainty_eigenvalue(const Matrix4& v) {
  const Eigen::Matrix4cd h = v.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double CovarianceMatrix::determinant() const { return m_.determinant(); }

CovarianceMatrix validate_covariance(const Matrix4& raw) {
  if (!raw.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "covariance matrix has non-finite entries",
                std::numeric_limits<double>::quiet_NaN());
  }
  const double asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance) {
    throw Error(ErrorKind::NotSymmetric, "max |V - V^T| = " + std::to_string(asymmetry), asymmetry);
  }
  const Matrix4 v = asymmetry == 0.0 ? raw : Matrix4(0.5 * (raw + raw.transpose()));

  const double min_eig = min_uncertainty_eigenvalue(v);
  if (min_eig < -kPhysicalityTolerance) {
    throw Error(ErrorKind::Unphysical,
                "smallest eigenvalue of V + i*Omega/2 is " + std::to_string(min_eig), min_eig);
  }
  const double det = v.determinant();
  if (!(det > 0.0)) {
    throw Error(ErrorKind::SingularCovariance, "det V = " + std::to_string(det), det);
  }
  return CovarianceMatrix(v);
}

double purity(const CovarianceMatrix& v) { return 1.0 / (4.0 * std::sqrt(v.determinant())); }

WignerFunction::WignerFunction(const CovarianceMatrix& v) {
  const double det = v.determinant();
  if (!(det >= 1e-300)) {
    throw Error(ErrorKind::SingularCovariance, "cannot invert covariance, det V = " + std::to_string(det), det);
  }
  inverse_ = v.matrix().inverse();
  norm_ = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(det));
}

double WignerFunction::exponent(const PhasePoint& u) const {
  const Vector4 x = u.vector();
  return -0.5 * x.dot(inverse_ * x);
}

double WignerFunction::operator()(const PhasePoint& u) const { return norm_ * std::exp(exponent(u)); }

double wigner(const CovarianceMatrix& v, const PhasePoint& u) { return WignerFunction(v)(u); }

Blocks blocks(const CovarianceMatrix& v) {
  const Matrix4& m = v.matrix();
  return {m.topLeftCorner<2, 2>(), m.bottomRightCorner<2, 2>(), m.topRightCorner<2, 2>()};
}

Matrix4 reassemble(const Blocks& b) {
  Matrix4 m;
  m.topLeftCorner<2, 2>() = b.idler;
  m.topRightCorner<2, 2>() = b.cross;
  m.bottomLeftCorner<2, 2>() = b.cross.transpose();
  m.bottomRightCorner<2, 2>() = b.signal;
  return m;
}

LocalInvariants local_invariants(const CovarianceMatrix& v) {
  const Blocks b = blocks(v);
  return {b.idler.determinant(), b.signal.determinant(), b.cross.determinant(), v.determinant()};
}

}  // namespace cvbell
