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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvbell/bell.hpp"
#include "cvbell/entanglement.hpp"
#include "cvbell/standard_form.hpp"
#include "cvbell/verification.hpp"

namespace cvbell {

/// Process exit codes of the command-line tool.
namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kTheoremViolation = 1;
inline constexpr int kUnphysical = 2;
inline constexpr int kUsage = 64;
}  // namespace exit_code

enum class Verdict { SeparableLocal, EntangledLocal, EntangledNonlocal, SeparableNonlocal };

const char* to_string(Verdict v);
Verdict classify(bool entangled, bool nonlocal);

struct Analysis {
  double purity = 0.0;
  StandardForm form;
  BellReport bell;
  std::optional<BellReport> oracle;
  EntanglementReport entanglement;
  MixednessBounds mixedness;
  Verdict verdict = Verdict::SeparableLocal;
};

Analysis analyze(const CovarianceMatrix& v, bool with_oracle = false, const OptimizerConfig& cfg = {});

nlohmann::json to_json(const Analysis& a);
nlohmann::json to_json(const ScanReport& r);
std::string to_text(const Analysis& a);

/// Inclusive arithmetic range "start:stop:step", or a single value "x".
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

/// Throws Error{InvalidArgument} for malformed text, step <= 0 or stop < start.
Range parse_range(const std::string& text);

struct SweepConfig {
  Range r;
  Range thermal{0.0, 0.0, 1.0};
  Range eta{1.0, 1.0, 1.0};
  std::filesystem::path out;
};

struct SweepRow {
  double r, n_th, eta;
  StandardForm form;
  double purity;
  double bmax;
  bool nonlocal;
  double simon_lhs, simon_rhs;
  bool entangled;
  double log_negativity;
};

/// Rows in lexicographic (r, n_th, eta) order. Validates every range before
/// evaluating anything.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

inline constexpr const char* kSweepHeader =
    "r,n_th,eta,n,m,c1,c2,purity,bmax,nonlocal,simon_lhs,simon_rhs,entangled,log_negativity";

/// Header plus one LF-terminated line per row, numbers with 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Command bodies. Each returns the process exit code and reports to the
// given streams instead of terminating.
int run_tmsv(double r, double n_th, double eta, const std::filesystem::path& out, std::ostream& log,
             std::ostream& err);
int run_check(const std::filesystem::path& input, bool with_oracle, bool json, std::ostream& out,
              std::ostream& err);
int run_sweep(const SweepConfig& cfg, std::ostream& log, std::ostream& err);
int run_verify(std::size_t samples, std::uint64_t seed, double n_max, bool json, unsigned threads,
               std::ostream& out, std::ostream& err);

}  // namespace cvbell
