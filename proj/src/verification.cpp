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

#include "cvbell/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "cvbell/bell.hpp"
#include "cvbell/entanglement.hpp"
#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr std::uint64_t kMaxAttemptsPerState = 1000000;
constexpr double kMinAcceptance = 1e-3;

std::string describe(const StandardForm& sf) {
  std::ostringstream os;
  os.precision(17);
  os << "(n=" << sf.n << ", m=" << sf.m << ", c1=" << sf.c1 << ", c2=" << sf.c2 << ")";
  return os.str();
}

unsigned resolve_threads(unsigned threads, std::size_t work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, work)));
}

// Runs body(i) for i in [0, count) over contiguous chunks.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const unsigned workers = resolve_threads(threads, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

bool ChainReport::taylor_ok(double slack) const { return taylor_lhs <= taylor_rhs + slack; }

bool ChainReport::final_gap_ok(double slack) const { return final_gap >= -slack; }

bool ChainReport::state_ok(double slack) const {
  return reduced_lhs >= reduced_rhs - slack && xprime_bound_ok && purity_link_ok && final_gap_ok(slack);
}

ChainReport evaluate_grid_point(double x) {
  ChainReport r;
  r.x = x;
  const double bracket = optimal_bracket(x);
  r.taylor_lhs = bracket * bracket / 16.0;
  r.taylor_rhs = 0.25 * (1.0 + x * x);
  r.final_gap = 2.0 - (2.0 + x * x) * std::sqrt(std::max(0.0, 1.0 - x * x));
  r.reduced_lhs = std::numeric_limits<double>::quiet_NaN();
  r.reduced_rhs = std::numeric_limits<double>::quiet_NaN();
  r.simon_margin = std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::vector<double> unit_grid(std::size_t intervals) {
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(intervals);
  return grid;
}

std::vector<ChainReport> taylor_bound_check(std::span<const double> x_grid) {
  std::vector<ChainReport> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "grid point outside [0, 1]", x);
    }
    const ChainReport r = evaluate_grid_point(x);
    if (!r.taylor_ok()) {
      throw Error(ErrorKind::AssertionFailure, "quartic bound violated at x = " + std::to_string(x), x);
    }
    if (!r.final_gap_ok()) {
      throw Error(ErrorKind::AssertionFailure, "2 - (2+x^2) sqrt(1-x^2) < 0 at x = " + std::to_string(x), x);
    }
    out.push_back(r);
  }
  return out;
}

RemainderDecay taylor_remainder_decay() {
  RemainderDecay d;
  for (double x : {1e-2, 1e-3, 1e-4}) {
    d.x.push_back(x);
    d.ratio.push_back(evaluate_grid_point(x).taylor_remainder() / (x * x));
  }
  for (std::size_t i = 1; i < d.ratio.size(); ++i) {
    if (!(d.ratio[i] < d.ratio[i - 1])) {
      throw Error(ErrorKind::AssertionFailure, "remainder / x^2 not decreasing toward 0", d.x[i]);
    }
  }
  if (!(d.ratio[1] < 0.1)) {
    throw Error(ErrorKind::AssertionFailure, "remainder / x^2 >= 0.1 at x = 1e-3", d.x[1]);
  }
  return d;
}

ChainReport evaluate_chain(const StandardForm& sf) {
  const double nm = sf.n * sf.m;
  const double x = sf.x();
  const double xp = sf.x_prime();
  ChainReport r = evaluate_grid_point(x);

  r.reduced_lhs = nm * (2.0 + 2.0 * x * xp - 1.0 / (4.0 * nm));
  r.reduced_rhs = 0.25 * (1.0 + x * x);

  // 1 - x² = (nm - c̃²)/nm, formed from the block determinants for precision near x = 1.
  const double one_minus_x2 = std::min(sf.det_q(), sf.det_p()) / nm;
  if (one_minus_x2 <= 0.0) {
    r.sqrt_links_skipped = true;
  } else {
    r.xprime_bound_ok = xp * xp <= 1.0 - 1.0 / (16.0 * nm * nm * one_minus_x2) + kChainSlack;
    r.purity_link_ok = 1.0 / (4.0 * nm) <= std::sqrt(one_minus_x2) + kChainSlack;
  }

  const SimonTest simon = simon_criterion(sf);
  r.simon_margin = simon.rhs - simon.lhs;
  return r;
}

ChainReport chain_inequality_check(const StandardForm& sf) {
  const ChainReport r = evaluate_chain(sf);
  if (!r.state_ok()) {
    std::string which;
    if (r.reduced_lhs < r.reduced_rhs - kChainSlack) which += " reduced";
    if (!r.xprime_bound_ok) which += " xprime";
    if (!r.purity_link_ok) which += " purity-link";
    if (!r.final_gap_ok(kChainSlack)) which += " final-gap";
    throw Error(ErrorKind::AssertionFailure, "inequality chain fails at" + which + " for " + describe(sf), r.x);
  }
  return r;
}

StandardForm sample_physical_state(std::uint64_t seed, std::uint64_t index, double n_max,
                                   std::uint64_t* attempts) {
  if (!(n_max > 0.5)) {
    throw Error(ErrorKind::InvalidArgument, "n_max must exceed 1/2", n_max);
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::uint64_t tries = 1; tries <= kMaxAttemptsPerState; ++tries) {
    StandardForm sf;
    sf.n = 0.5 + (n_max - 0.5) * unit(rng);
    sf.m = 0.5 + (n_max - 0.5) * unit(rng);
    const double bound = std::sqrt(sf.n * sf.m);
    sf.c1 = bound * (2.0 * unit(rng) - 1.0);
    sf.c2 = bound * (2.0 * unit(rng) - 1.0);
    try {
      (void)to_covariance(sf);
    } catch (const Error&) {
      continue;
    }
    if (sf.x() > 1.0 + 1e-12) throw Error(ErrorKind::AssertionFailure, "physical state with x > 1", sf.x());
    if (attempts != nullptr) *attempts = tries;
    return sf;
  }
  throw Error(ErrorKind::SamplerStarvation,
              "no physical state after " + std::to_string(kMaxAttemptsPerState) + " draws", 0.0);
}

double SampleBatch::acceptance_rate() const {
  return attempts == 0 ? 0.0 : static_cast<double>(states.size()) / static_cast<double>(attempts);
}

SampleBatch sample_physical_states(std::size_t count, std::uint64_t seed, double n_max, unsigned threads) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1", 0.0);
  if (!(n_max > 0.5)) throw Error(ErrorKind::InvalidArgument, "n_max must exceed 1/2", n_max);

  SampleBatch batch;
  batch.states.resize(count);
  std::vector<std::uint64_t> attempts(count, 0);
  parallel_for(count, threads, [&](std::size_t i) {
    batch.states[i] = sample_physical_state(seed, i, n_max, &attempts[i]);
  });
  for (std::uint64_t a : attempts) batch.attempts += a;

  if (batch.attempts >= kMaxAttemptsPerState && batch.acceptance_rate() < kMinAcceptance) {
    throw Error(ErrorKind::SamplerStarvation, "acceptance rate below 0.1%", batch.acceptance_rate());
  }
  return batch;
}

namespace {

struct Classification {
  bool nonlocal = false;
  bool entangled = false;
  bool chain_ok = true;
  double reduced_margin = 0.0;
  double simon_margin = 0.0;
};

Classification classify(const StandardForm& sf) {
  Classification c;
  c.nonlocal = is_nonlocal(sf).nonlocal;
  c.entangled = simon_criterion(sf).entangled;
  const ChainReport chain = evaluate_chain(sf);
  c.chain_ok = chain.state_ok();
  if (c.nonlocal) {
    c.chain_ok = c.chain_ok && chain.reduced_lhs >= chain.reduced_rhs - kChainSlack && c.entangled;
  }
  c.reduced_margin = chain.reduced_margin();
  c.simon_margin = chain.simon_margin;
  return c;
}

}  // namespace

ScanReport scan_nonlocal_implies_entangled(const ScanConfig& cfg) {
  const SampleBatch batch = sample_physical_states(cfg.count, cfg.seed, cfg.n_max, cfg.threads);

  std::vector<StandardForm> states = batch.states;
  states.insert(states.end(), cfg.injected.begin(), cfg.injected.end());

  std::vector<Classification> classes(states.size());
  parallel_for(states.size(), cfg.threads, [&](std::size_t i) { classes[i] = classify(states[i]); });

  ScanReport report;
  report.samples = states.size();
  report.injected = cfg.injected.size();
  report.seed = cfg.seed;
  report.n_max = cfg.n_max;
  report.acceptance_rate = batch.acceptance_rate();
  report.min_reduced_margin = std::numeric_limits<double>::infinity();
  report.min_simon_margin_nonlocal = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < states.size(); ++i) {
    const Classification& c = classes[i];
    report.nonlocal_count += c.nonlocal;
    report.entangled_count += c.entangled;
    if (!c.chain_ok) ++report.chain_failures;
    report.min_reduced_margin = std::min(report.min_reduced_margin, c.reduced_margin);
    if (c.nonlocal) {
      report.min_simon_margin_nonlocal = std::min(report.min_simon_margin_nonlocal, c.simon_margin);
    }
    if (c.nonlocal && !c.entangled) {
      report.counterexamples.push_back(states[i]);
    } else if (c.nonlocal) {
      ++report.entangled_nonlocal_count;
    } else if (c.entangled) {
      ++report.entangled_local_count;
    } else {
      ++report.separable_local_count;
    }
  }
  return report;
}

}  // namespace cvbell
