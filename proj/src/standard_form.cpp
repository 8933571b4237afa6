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

#include "cvbell/standard_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "cvbell/errors.hpp"

namespace cvbell {

double StandardForm::c_tilde() const { return std::max(std::abs(c1), std::abs(c2)); }

double StandardForm::c() const { return std::hypot(c1, c2); }

double StandardForm::phi() const { return std::atan2(c2, c1); }

double StandardForm::x() const { return c_tilde() / std::sqrt(n * m); }

double StandardForm::x_prime() const { return std::min(std::abs(c1), std::abs(c2)) / std::sqrt(n * m); }

namespace {

// a*b - c*c with both products' rounding errors recovered by fma; the two
// terms nearly cancel for strongly squeezed pure states.
double product_gap(double a, double b, double c) {
  const double ab = a * b;
  const double ab_err = std::fma(a, b, -ab);
  const double cc = c * c;
  const double cc_err = std::fma(c, c, -cc);
  return (ab - cc) + (ab_err - cc_err);
}

}  // namespace

double StandardForm::det_q() const { return product_gap(n, m, c1); }

double StandardForm::det_p() const { return product_gap(n, m, c2); }

double StandardForm::det() const { return det_q() * det_p(); }

Matrix4 StandardForm::matrix() const {
  Matrix4 v = Matrix4::Zero();
  v(0, 0) = v(1, 1) = n;
  v(2, 2) = v(3, 3) = m;
  v(0, 2) = v(2, 0) = c1;
  v(1, 3) = v(3, 1) = c2;
  return v;
}

CovarianceMatrix to_covariance(const StandardForm& sf) { return validate_covariance(sf.matrix()); }

Matrix4 LocalSymplectic::matrix() const {
  Matrix4 s = Matrix4::Zero();
  s.topLeftCorner<2, 2>() = idler;
  s.bottomRightCorner<2, 2>() = signal;
  return s;
}

double LocalSymplectic::symplectic_defect() const {
  const Matrix2& omega = single_mode_symplectic_form();
  const double di = (idler * omega * idler.transpose() - omega).cwiseAbs().maxCoeff();
  const double ds = (signal * omega * signal.transpose() - omega).cwiseAbs().maxCoeff();
  return std::max(di, ds);
}

Matrix2 rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return (Matrix2() << c, -s, s, c).finished();
}

Matrix2 squeezer(double s) { return (Matrix2() << s, 0.0, 0.0, 1.0 / s).finished(); }

Matrix2 local_symplectic_block(double theta1, double z, double theta2) {
  if (theta1 == 0.0 && z == 0.0 && theta2 == 0.0) return Matrix2::Identity();
  return rotation(theta1) * squeezer(std::exp(z)) * rotation(theta2);
}

namespace {

// Orthogonal O with O A Oᵀ diagonal for symmetric 2x2 A (closed-form
// half-angle). A degenerate block gives angle 0.
Matrix2 principal_axes(const Matrix2& a) {
  const double theta = 0.5 * std::atan2(2.0 * a(0, 1), a(0, 0) - a(1, 1));
  return rotation(theta).transpose();
}

// Squeezer equalizing the diagonal of a positive diagonal 2x2 block.
Matrix2 equalizer(const Matrix2& diag_block) {
  return squeezer(std::pow(diag_block(1, 1) / diag_block(0, 0), 0.25));
}

// Two-rotation SVD of a 2x2 matrix: M = R(phi) diag(sx, sy) R(theta) with
// sx >= |sy|. Reflections never appear; a negative singular value absorbs them.
struct RotationSvd {
  double phi;
  double theta;
};

RotationSvd rotation_svd(const Matrix2& m) {
  const double e = 0.5 * (m(0, 0) + m(1, 1));
  const double f = 0.5 * (m(0, 0) - m(1, 1));
  const double g = 0.5 * (m(1, 0) + m(0, 1));
  const double h = 0.5 * (m(1, 0) - m(0, 1));
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  return {0.5 * (a2 + a1), 0.5 * (a2 - a1)};
}

Matrix4 congruence(const LocalSymplectic& t, const Matrix4& v) {
  const Matrix4 s = t.matrix();
  return s * v * s.transpose();
}

// Exact quarter- and half-turns used for sign canonicalization.
const Matrix2& quarter_turn() {
  static const Matrix2 j = (Matrix2() << 0.0, 1.0, -1.0, 0.0).finished();
  return j;
}

struct SignFix {
  bool swap = false;
  bool flip = false;
};

SignFix sign_fix(double c1, double c2) {
  SignFix fix;
  if (std::abs(c2) > std::abs(c1)) {
    fix.swap = true;
    std::swap(c1, c2);
  }
  fix.flip = c1 < 0.0;
  return fix;
}

}  // namespace

StandardForm canonicalize_signs(const StandardForm& sf) {
  StandardForm out = sf;
  const SignFix fix = sign_fix(sf.c1, sf.c2);
  if (fix.swap) std::swap(out.c1, out.c2);
  if (fix.flip) {
    out.c1 = -out.c1;
    out.c2 = -out.c2;
  }
  return out;
}

Reduction reduce(const CovarianceMatrix& v) {
  const Matrix4& original = v.matrix();

  // (a) principal axes of each local block
  LocalSymplectic t;
  t.idler = principal_axes(original.topLeftCorner<2, 2>());
  t.signal = principal_axes(original.bottomRightCorner<2, 2>());
  Matrix4 current = congruence(t, original);

  // (b) local squeezing to n·I₂, m·I₂
  t.idler = equalizer(current.topLeftCorner<2, 2>()) * t.idler;
  t.signal = equalizer(current.bottomRightCorner<2, 2>()) * t.signal;
  current = congruence(t, original);

  // (c) cross block diagonalization; n·I₂ and m·I₂ are rotation invariant
  const Matrix2 cross = current.topRightCorner<2, 2>();
  if (cross.cwiseAbs().maxCoeff() != 0.0) {
    const RotationSvd svd = rotation_svd(cross);
    t.idler = rotation(svd.phi).transpose() * t.idler;
    t.signal = rotation(svd.theta) * t.signal;
    current = congruence(t, original);
  }

  // (d) sign canon
  const SignFix fix = sign_fix(current(0, 2), current(1, 3));
  if (fix.swap) {
    t.idler = quarter_turn() * t.idler;
    t.signal = quarter_turn() * t.signal;
  }
  if (fix.flip) t.idler = -t.idler;
  if (fix.swap || fix.flip) current = congruence(t, original);

  const Blocks b = blocks(v);
  StandardForm form;
  form.n = std::sqrt(b.idler.determinant());
  form.m = std::sqrt(b.signal.determinant());
  form.c1 = current(0, 2);
  form.c2 = current(1, 3);
  return {form, t};
}

CovarianceMatrix apply_local_symplectic(const CovarianceMatrix& v, const LocalSymplectic& t) {
  return validate_covariance(congruence(t, v.matrix()));
}

LocalSymplectic random_local_symplectic(std::uint64_t seed, double max_squeeze) {
  if (!(max_squeeze >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "max_squeeze must be >= 0", max_squeeze);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto block = [&] {
    const double theta1 = 2.0 * std::numbers::pi * unit(rng);
    const double z = max_squeeze * (2.0 * unit(rng) - 1.0);
    const double theta2 = 2.0 * std::numbers::pi * unit(rng);
    return local_symplectic_block(theta1, z, theta2);
  };
  LocalSymplectic t;
  t.idler = block();
  t.signal = block();
  return t;
}

}  // namespace cvbell
