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

#include "cvbell/bell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "cvbell/errors.hpp"

namespace cvbell {

double BellFunction::operator()(const PhasePoint& u) const {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double origin = wigner_.normalization();
  return pi2 * (origin + wigner_(u.idler_only()) + wigner_(u.signal_only()) - wigner_(u));
}

double bell_function(const CovarianceMatrix& v, const PhasePoint& u) { return BellFunction(v)(u); }

PhasePoint scaled_point_to_phase(const StandardForm& sf, const BellEvaluationPoint& p) {
  const double scale_q = std::sqrt(sf.det_q());
  const double scale_p = std::sqrt(sf.det_p());
  return {p.alpha_i * std::cos(p.theta_i) * scale_q, p.alpha_i * std::sin(p.theta_i) * scale_p,
          p.alpha_s * std::cos(p.theta_s) * scale_q, p.alpha_s * std::sin(p.theta_s) * scale_p};
}

double bell_over_angles(const StandardForm& sf, double alpha_i, double alpha_s) {
  const double ei = sf.m * alpha_i * alpha_i;
  const double es = sf.n * alpha_s * alpha_s;
  const double cross = 2.0 * sf.c_tilde() * alpha_i * alpha_s;
  const double bracket = 1.0 + std::exp(-0.5 * ei) + std::exp(-0.5 * es) - std::exp(-0.5 * (ei + es + cross));
  return bracket / (4.0 * std::sqrt(sf.det()));
}

namespace {

// k = c̃ sqrt(m/n), the cross-term weight along the symmetric ray.
double ray_coupling(const StandardForm& sf) { return sf.c_tilde() * std::sqrt(sf.m / sf.n); }

}  // namespace

double bell_profile(const StandardForm& sf, double a) {
  const double k = ray_coupling(sf);
  return 1.0 + 2.0 * std::pow(a, -sf.m) - std::pow(a, -(2.0 * sf.m + 2.0 * k));
}

double optimal_bracket(double x) {
  return 1.0 + std::pow(1.0 / (1.0 + x), 1.0 / (1.0 + 2.0 * x)) * (1.0 + 2.0 * x) / (1.0 + x);
}

BellReport bell_max_closed_form(const StandardForm& sf) {
  BellReport r;
  r.x = sf.x();
  r.c_tilde = sf.c_tilde();
  r.bmax = optimal_bracket(r.x) / (4.0 * std::sqrt(sf.det()));

  const double k = ray_coupling(sf);
  const double log_a = std::log1p(k / sf.m) / (sf.m + 2.0 * k);
  r.a_star = std::exp(log_a);
  r.alpha_i_star = std::sqrt(2.0 * log_a);

  r.margin = r.bmax - kLocalBound;
  r.nonlocal = r.margin > 0.0;
  return r;
}

namespace {

struct SearchContext {
  const StandardForm* sf;
  const BellFunction* bell;
};

double objective(const BellEvaluationPoint& p, const SearchContext& ctx) {
  return std::abs((*ctx.bell)(scaled_point_to_phase(*ctx.sf, p)));
}

BellEvaluationPoint unpack(const gsl_vector* v) {
  return {gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2), gsl_vector_get(v, 3)};
}

double gsl_objective(const gsl_vector* v, void* params) {
  return -objective(unpack(v), *static_cast<const SearchContext*>(params));
}

struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

struct PolishResult {
  BellEvaluationPoint point;
  double value;
  bool converged;
};

PolishResult polish(const BellEvaluationPoint& start, SearchContext& ctx, const OptimizerConfig& cfg) {
  static gsl_error_handler_t* const previous_handler = gsl_set_error_handler_off();
  (void)previous_handler;
  constexpr std::size_t kDim = 4;
  std::unique_ptr<gsl_vector, GslVectorDeleter> x(gsl_vector_alloc(kDim));
  std::unique_ptr<gsl_vector, GslVectorDeleter> step(gsl_vector_alloc(kDim));
  gsl_vector_set(x.get(), 0, start.alpha_i);
  gsl_vector_set(x.get(), 1, start.alpha_s);
  gsl_vector_set(x.get(), 2, start.theta_i);
  gsl_vector_set(x.get(), 3, start.theta_s);
  const double alpha_step = cfg.alpha_max / std::max(2, 2 * (cfg.grid_points - 1));
  gsl_vector_set(step.get(), 0, alpha_step);
  gsl_vector_set(step.get(), 1, alpha_step);
  gsl_vector_set(step.get(), 2, std::numbers::pi / 8.0);
  gsl_vector_set(step.get(), 3, std::numbers::pi / 8.0);

  gsl_multimin_function fn;
  fn.n = kDim;
  fn.f = gsl_objective;
  fn.params = &ctx;

  std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim));
  gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());

  int status = GSL_CONTINUE;
  double reference = minimizer->fval;
  int reference_iter = 0;
  for (int iter = 1; iter <= cfg.max_iterations && status == GSL_CONTINUE; ++iter) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()), cfg.size_tolerance);
    if (iter - reference_iter >= cfg.stall_iterations) {
      if (reference - minimizer->fval <= cfg.stall_tolerance * std::abs(minimizer->fval)) status = GSL_SUCCESS;
      reference = minimizer->fval;
      reference_iter = iter;
    }
  }
  return {unpack(minimizer->x), -minimizer->fval, status == GSL_SUCCESS};
}

}  // namespace

BellReport bell_max_numeric(const StandardForm& sf, const OptimizerConfig& cfg) {
  if (cfg.grid_points < 1 || cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.alpha_max > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "invalid optimizer configuration", cfg.alpha_max);
  }
  const BellFunction bell(to_covariance(sf));
  SearchContext ctx{&sf, &bell};

  constexpr std::array<double, 4> kAngles = {0.0, 0.5 * std::numbers::pi, std::numbers::pi,
                                             1.5 * std::numbers::pi};
  const double spacing = cfg.grid_points > 1 ? cfg.alpha_max / (cfg.grid_points - 1) : 0.0;

  std::vector<BellEvaluationPoint> starts;
  std::vector<double> values;
  for (int i = 0; i < cfg.grid_points; ++i) {
    for (int j = 0; j < cfg.grid_points; ++j) {
      for (double ti : kAngles) {
        for (double ts : kAngles) {
          const BellEvaluationPoint p{i * spacing, j * spacing, ti, ts};
          starts.push_back(p);
          values.push_back(objective(p, ctx));
        }
      }
    }
  }

  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  PolishResult best{starts[order.front()], values[order.front()], true};
  bool all_converged = true;
  const std::size_t polishes = std::min<std::size_t>(static_cast<std::size_t>(cfg.restarts), order.size());
  for (std::size_t k = 0; k < polishes; ++k) {
    const PolishResult r = polish(starts[order[k]], ctx, cfg);
    all_converged = all_converged && r.converged;
    if (r.value > best.value) best = r;
  }

  BellReport report;
  report.bmax = best.value;
  report.alpha_i_star = std::abs(best.point.alpha_i);
  report.a_star = std::exp(0.5 * report.alpha_i_star * report.alpha_i_star);
  report.x = sf.x();
  report.c_tilde = sf.c_tilde();
  report.margin = report.bmax - kLocalBound;
  report.nonlocal = report.margin > 0.0;
  report.converged = all_converged;
  return report;
}

NonlocalityTest is_nonlocal(const StandardForm& sf) {
  const double bracket = optimal_bracket(sf.x());
  NonlocalityTest t;
  t.lhs = bracket * bracket / 16.0;
  t.rhs = 4.0 * sf.det();
  t.nonlocal = t.lhs > t.rhs;
  return t;
}

}  // namespace cvbell
