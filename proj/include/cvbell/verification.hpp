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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cvbell/standard_form.hpp"

namespace cvbell {

/// Slack for the closed-form grid inequalities in x.
inline constexpr double kGridSlack = 1e-12;
/// Slack for inequalities evaluated on sampled states.
inline constexpr double kChainSlack = 1e-9;

/// Every quantity of the argument that non-locality forces entanglement,
/// evaluated at one point. Fields that need a state are NaN for grid-only
/// reports.
struct ChainReport {
  double x = 0.0;
  double taylor_lhs = 0.0;   // optimal_bracket(x)^2 / 16
  double taylor_rhs = 0.0;   // (1 + x²) / 4
  double reduced_lhs = 0.0;  // nm (2 + 2 x x' - 1/(4nm))
  double reduced_rhs = 0.0;  // (1 + x²) / 4
  bool xprime_bound_ok = true;  // x'² <= 1 - 1/(16 (nm)² (1 - x²)); skipped at x = 1
  bool purity_link_ok = true;   // 1/(4nm) <= sqrt(1 - x²); skipped at x = 1
  bool sqrt_links_skipped = false;
  double final_gap = 0.0;     // 2 - (2 + x²) sqrt(1 - x²)
  double simon_margin = 0.0;  // Simon rhs - lhs, with n² + m² kept

  double taylor_remainder() const { return taylor_rhs - taylor_lhs; }
  double reduced_margin() const { return reduced_lhs - reduced_rhs; }
  bool taylor_ok(double slack = kGridSlack) const;
  bool final_gap_ok(double slack = kGridSlack) const;
  bool state_ok(double slack = kChainSlack) const;
};

/// x-only part of the chain: the quartic-remainder bound and the final
/// nonnegativity.
ChainReport evaluate_grid_point(double x);

/// 0, 1/intervals, ..., 1.
std::vector<double> unit_grid(std::size_t intervals = 10000);

/// Evaluates every grid point; throws Error{AssertionFailure} carrying the
/// first x where the bound or nonnegativity fails.
std::vector<ChainReport> taylor_bound_check(std::span<const double> x_grid);

struct RemainderDecay {
  std::vector<double> x;      // 1e-2, 1e-3, 1e-4
  std::vector<double> ratio;  // (taylor_rhs - taylor_lhs) / x²
};

/// Checks that the remainder is o(x²): ratio decreasing across the three
/// points and below 0.1 at x = 1e-3. Throws Error{AssertionFailure}.
RemainderDecay taylor_remainder_decay();

/// Full chain for one state, never throws.
ChainReport evaluate_chain(const StandardForm& sf);

/// evaluate_chain, throwing Error{AssertionFailure} if any link fails.
ChainReport chain_inequality_check(const StandardForm& sf);

/// One state drawn from its own substream of (seed, index): n, m uniform on
/// [1/2, n_max], c1, c2 uniform on [-sqrt(nm), sqrt(nm)], rejected until the
/// covariance matrix validates. `attempts` receives the number of draws.
StandardForm sample_physical_state(std::uint64_t seed, std::uint64_t index, double n_max,
                                   std::uint64_t* attempts = nullptr);

struct SampleBatch {
  std::vector<StandardForm> states;
  std::uint64_t attempts = 0;

  double acceptance_rate() const;
};

/// Deterministic in (count, seed, n_max) regardless of `threads`
/// (0 = hardware concurrency). Throws Error{SamplerStarvation}.
SampleBatch sample_physical_states(std::size_t count, std::uint64_t seed, double n_max, unsigned threads = 0);

struct ScanConfig {
  std::size_t count = 100000;
  std::uint64_t seed = 42;
  double n_max = 3.0;
  unsigned threads = 0;
  std::vector<StandardForm> injected;  // classified after the sampled states
};

struct ScanReport {
  std::size_t samples = 0;  // sampled + injected
  std::size_t injected = 0;
  std::size_t nonlocal_count = 0;
  std::size_t entangled_count = 0;
  std::size_t separable_local_count = 0;
  std::size_t entangled_local_count = 0;
  std::size_t entangled_nonlocal_count = 0;
  std::size_t chain_failures = 0;
  std::vector<StandardForm> counterexamples;  // nonlocal but separable
  std::uint64_t seed = 0;
  double n_max = 0.0;
  double acceptance_rate = 0.0;
  double min_reduced_margin = 0.0;
  double min_simon_margin_nonlocal = 0.0;  // over nonlocal states; +inf if none

  bool operator==(const ScanReport&) const = default;
};

ScanReport scan_nonlocal_implies_entangled(const ScanConfig& cfg);

}  // namespace cvbell
