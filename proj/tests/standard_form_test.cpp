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

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "cvbell/errors.hpp"
#include "cvbell/verification.hpp"

namespace cvbell {
namespace {

StandardForm tmsv_form(double r) {
  return {0.5 * std::cosh(2 * r), 0.5 * std::cosh(2 * r), 0.5 * std::sinh(2 * r), -0.5 * std::sinh(2 * r)};
}

void expect_form_near(const StandardForm& a, const StandardForm& b, double tol) {
  EXPECT_NEAR(a.n, b.n, tol);
  EXPECT_NEAR(a.m, b.m, tol);
  EXPECT_NEAR(a.c1, b.c1, tol);
  EXPECT_NEAR(a.c2, b.c2, tol);
}

bool is_signed_permutation(const Matrix2& s, double tol) {
  const bool diag = std::abs(s(0, 1)) < tol && std::abs(s(1, 0)) < tol && std::abs(std::abs(s(0, 0)) - 1) < tol &&
                    std::abs(std::abs(s(1, 1)) - 1) < tol;
  const bool anti = std::abs(s(0, 0)) < tol && std::abs(s(1, 1)) < tol && std::abs(std::abs(s(0, 1)) - 1) < tol &&
                    std::abs(std::abs(s(1, 0)) - 1) < tol;
  return diag || anti;
}

TEST(StandardForm, DerivedQuantities) {
  const StandardForm sf{1.0, 4.0, -0.3, 0.8};
  EXPECT_DOUBLE_EQ(sf.c_tilde(), 0.8);
  EXPECT_DOUBLE_EQ(sf.c(), std::hypot(0.3, 0.8));
  EXPECT_DOUBLE_EQ(sf.phi(), std::atan2(0.8, -0.3));
  EXPECT_DOUBLE_EQ(sf.x(), 0.4);
  EXPECT_DOUBLE_EQ(sf.x_prime(), 0.15);
  EXPECT_NEAR(sf.det(), (4.0 - 0.09) * (4.0 - 0.64), 1e-14);
}

// det of the stored doubles, products formed exactly in quad precision.
double quad_det(const StandardForm& sf) {
  __extension__ using quad = __float128;
  const quad q = static_cast<quad>(sf.n) * sf.m - static_cast<quad>(sf.c1) * sf.c1;
  const quad p = static_cast<quad>(sf.n) * sf.m - static_cast<quad>(sf.c2) * sf.c2;
  return static_cast<double>(q * p);
}

TEST(StandardForm, DetStaysAccurateForStrongSqueezing) {
  for (double r : {1.0, 3.0, 4.0, 5.0, 6.0}) {
    const StandardForm sf = tmsv_form(r);
    EXPECT_NEAR(sf.det(), quad_det(sf), 4e-16 * quad_det(sf)) << r;
    EXPECT_NEAR(sf.det(), 0.0625, 1e-6) << r;
  }
}

TEST(Reduce, StandardFormInputIsFixedPoint) {
  const StandardForm sf{0.9, 1.3, 0.6, -0.2};
  const Reduction red = reduce(to_covariance(sf));
  expect_form_near(red.form, sf, 1e-12);
  EXPECT_TRUE(is_signed_permutation(red.transform.idler, 1e-9));
  EXPECT_TRUE(is_signed_permutation(red.transform.signal, 1e-9));
}

TEST(Reduce, RecoversTmsvParameters) {
  const Reduction red = reduce(to_covariance(tmsv_form(0.5)));
  EXPECT_NEAR(red.form.n, 0.7715403174076219, 1e-12);
  EXPECT_NEAR(red.form.m, 0.7715403174076219, 1e-12);
  EXPECT_NEAR(red.form.c1, 0.5876005968219007, 1e-12);
  EXPECT_NEAR(red.form.c2, -0.5876005968219007, 1e-12);
}

TEST(Reduce, RecoversTmsvAfterRandomLocalSymplectic) {
  const CovarianceMatrix v = to_covariance(tmsv_form(0.5));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const CovarianceMatrix moved = apply_local_symplectic(v, random_local_symplectic(seed, 1.0));
    expect_form_near(reduce(moved).form, tmsv_form(0.5), 1e-8);
  }
}

TEST(Reduce, TransformIsSymplecticAndReproducesForm) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StandardForm sf = sample_physical_state(11, seed, 3.0);
    const CovarianceMatrix moved = apply_local_symplectic(to_covariance(sf), random_local_symplectic(seed, 1.0));
    const Reduction red = reduce(moved);
    EXPECT_LT(red.transform.symplectic_defect(), 1e-10);
    const Matrix4 s = red.transform.matrix();
    const Matrix4 image = s * moved.matrix() * s.transpose();
    EXPECT_LT((image - red.form.matrix()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_GE(red.form.c1, std::abs(red.form.c2));
    EXPECT_NEAR(red.form.n, std::sqrt(blocks(moved).idler.determinant()), 1e-15 * red.form.n + 1e-15);
  }
}

TEST(Reduce, PreservesLocalInvariants) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StandardForm sf = sample_physical_state(5, seed, 3.0);
    const CovarianceMatrix moved = apply_local_symplectic(to_covariance(sf), random_local_symplectic(seed, 1.0));
    const LocalInvariants before = local_invariants(moved);
    const StandardForm out = reduce(moved).form;
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    EXPECT_LT(rel(out.n * out.n, before.det_idler), 1e-9);
    EXPECT_LT(rel(out.m * out.m, before.det_signal), 1e-9);
    EXPECT_LT(rel(out.c1 * out.c2, before.det_cross), 1e-9);
    EXPECT_LT(rel(out.det(), before.det_total), 1e-9);
  }
}

TEST(Reduce, Idempotent) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const StandardForm first =
        reduce(apply_local_symplectic(to_covariance(sample_physical_state(3, seed, 3.0)), random_local_symplectic(seed, 0.8)))
            .form;
    expect_form_near(reduce(to_covariance(first)).form, first, 1e-10);
  }
}

TEST(Reduce, DegenerateBlocksAndZeroCross) {
  // Thermal product state: both local blocks degenerate, cross block zero.
  const Reduction red = reduce(validate_covariance(Matrix4::Identity()));
  EXPECT_EQ(red.form, (StandardForm{1.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(red.transform.idler, Matrix2::Identity());
  EXPECT_EQ(red.transform.signal, Matrix2::Identity());
}

TEST(Reduce, SqueezedProductState) {
  Matrix4 raw = Matrix4::Zero();
  raw.topLeftCorner<2, 2>() << 2.0, 0.3, 0.3, 0.4;
  raw.bottomRightCorner<2, 2>() << 0.5, 0.0, 0.0, 0.5;
  const Reduction red = reduce(validate_covariance(raw));
  EXPECT_NEAR(red.form.n, std::sqrt(0.8 - 0.09), 1e-14);
  EXPECT_NEAR(red.form.m, 0.5, 1e-15);
  EXPECT_EQ(red.form.c1, 0.0);
  EXPECT_EQ(red.form.c2, 0.0);
}

TEST(Reduce, ReflectedCrossBlockStaysProper) {
  // det V_IS > 0 and < 0 both need det +1 local maps.
  for (double sign : {1.0, -1.0}) {
    const StandardForm sf{1.2, 0.9, 0.4, sign * 0.25};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Reduction red = reduce(apply_local_symplectic(to_covariance(sf), random_local_symplectic(seed, 0.5)));
      EXPECT_NEAR(red.transform.idler.determinant(), 1.0, 1e-12);
      EXPECT_NEAR(red.transform.signal.determinant(), 1.0, 1e-12);
      expect_form_near(red.form, canonicalize_signs(sf), 1e-9);
    }
  }
}

TEST(ApplyLocalSymplectic, IdentityIsBitExact) {
  const CovarianceMatrix v = to_covariance({0.9, 1.3, 0.6, -0.2});
  EXPECT_EQ(apply_local_symplectic(v, LocalSymplectic{}).matrix(), v.matrix());
}

TEST(ApplyLocalSymplectic, SqueezedVacuumDiagonal) {
  const double s = 1.7;
  LocalSymplectic t;
  t.idler = squeezer(s);
  t.signal = squeezer(s);
  const Matrix4 out = apply_local_symplectic(validate_covariance(0.5 * Matrix4::Identity()), t).matrix();
  EXPECT_DOUBLE_EQ(out(0, 0), s * s / 2);
  EXPECT_DOUBLE_EQ(out(1, 1), 1 / (2 * s * s));
  EXPECT_DOUBLE_EQ(out(2, 2), s * s / 2);
  EXPECT_DOUBLE_EQ(out(3, 3), 1 / (2 * s * s));
}

TEST(RandomLocalSymplectic, IdentityBlockAtZeroParameters) {
  EXPECT_EQ(local_symplectic_block(0.0, 0.0, 0.0), Matrix2::Identity());
}

TEST(RandomLocalSymplectic, SymplecticAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LocalSymplectic a = random_local_symplectic(seed, 2.0);
    EXPECT_LT(a.symplectic_defect(), 1e-12);
    const LocalSymplectic b = random_local_symplectic(seed, 2.0);
    EXPECT_EQ(a.idler, b.idler);
    EXPECT_EQ(a.signal, b.signal);
  }
  EXPECT_NE(random_local_symplectic(1, 1.0).idler, random_local_symplectic(2, 1.0).idler);
}

TEST(RandomLocalSymplectic, ZeroSqueezeIsRotation) {
  const LocalSymplectic t = random_local_symplectic(9, 0.0);
  EXPECT_LT((t.idler * t.idler.transpose() - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RandomLocalSymplectic, RejectsNegativeSqueeze) {
  EXPECT_THROW((void)random_local_symplectic(1, -0.1), Error);
}

TEST(CanonicalizeSigns, Examples) {
  EXPECT_EQ(canonicalize_signs({1, 1, 0.2, 0.5}), (StandardForm{1, 1, 0.5, 0.2}));
  EXPECT_EQ(canonicalize_signs({1, 1, -0.5, 0.2}), (StandardForm{1, 1, 0.5, -0.2}));
  EXPECT_EQ(canonicalize_signs({1, 1, 0.2, -0.5}), (StandardForm{1, 1, 0.5, -0.2}));
}

TEST(CanonicalizeSigns, DerivedQuantitiesUnchanged) {
  for (const StandardForm sf : {StandardForm{1.0, 2.0, -0.4, 0.9}, StandardForm{0.7, 0.8, 0.1, -0.3}}) {
    const StandardForm c = canonicalize_signs(sf);
    EXPECT_GE(c.c1, std::abs(c.c2));
    EXPECT_EQ(c.c_tilde(), sf.c_tilde());
    EXPECT_EQ(c.x(), sf.x());
    EXPECT_EQ(c.x_prime(), sf.x_prime());
    EXPECT_EQ(c.det(), c.det_q() * c.det_p());
    EXPECT_NEAR(c.det(), sf.det(), 1e-15);
  }
}

}  // namespace
}  // namespace cvbell
