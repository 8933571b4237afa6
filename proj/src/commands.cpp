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

#include "cvbell/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "cvbell/errors.hpp"
#include "cvbell/state_file.hpp"

namespace cvbell {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::SeparableLocal: return "separable & local";
    case Verdict::EntangledLocal: return "entangled & local";
    case Verdict::EntangledNonlocal: return "entangled & nonlocal";
    case Verdict::SeparableNonlocal: return "separable & nonlocal";
  }
  return "unknown";
}

Verdict classify(bool entangled, bool nonlocal) {
  if (nonlocal) return entangled ? Verdict::EntangledNonlocal : Verdict::SeparableNonlocal;
  return entangled ? Verdict::EntangledLocal : Verdict::SeparableLocal;
}

Analysis analyze(const CovarianceMatrix& v, bool with_oracle, const OptimizerConfig& cfg) {
  Analysis a;
  a.purity = purity(v);
  a.form = reduce(v).form;
  a.bell = bell_max_closed_form(a.form);
  if (with_oracle) a.oracle = bell_max_numeric(a.form, cfg);
  a.entanglement = analyze_entanglement(a.form);
  a.mixedness = mixedness_bounds(a.form);
  a.verdict = classify(a.entanglement.entangled, a.bell.nonlocal);
  return a;
}

namespace {

nlohmann::json bell_json(const BellReport& b) {
  return {{"bmax", b.bmax},         {"a_star", b.a_star}, {"alpha_i_star", b.alpha_i_star},
          {"x", b.x},               {"c_tilde", b.c_tilde}, {"nonlocal", b.nonlocal},
          {"margin", b.margin},     {"converged", b.converged}};
}

nlohmann::json form_json(const StandardForm& sf) {
  return {{"n", sf.n}, {"m", sf.m}, {"c1", sf.c1}, {"c2", sf.c2}, {"c_tilde", sf.c_tilde()},
          {"x", sf.x()}, {"x_prime", sf.x_prime()}, {"det", sf.det()}};
}

// JSON has no infinities; an empty minimum is reported as null.
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

nlohmann::json to_json(const Analysis& a) {
  nlohmann::json j;
  j["purity"] = a.purity;
  j["standard_form"] = form_json(a.form);
  j["bell"] = bell_json(a.bell);
  if (a.oracle) j["bell_oracle"] = bell_json(*a.oracle);
  const EntanglementReport& e = a.entanglement;
  j["entanglement"] = {{"simon_lhs", e.simon_lhs},   {"simon_rhs", e.simon_rhs},
                       {"entangled", e.entangled},   {"nu_tilde", e.nu_tilde},
                       {"log_negativity", e.log_negativity}, {"purity", e.purity}};
  j["mixedness"] = {{"purity_bound_ok", a.mixedness.purity_bound_ok},
                    {"product_bound_ok", a.mixedness.product_bound_ok}};
  j["verdict"] = to_string(a.verdict);
  return j;
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json counter = nlohmann::json::array();
  for (const StandardForm& sf : r.counterexamples) counter.push_back(form_json(sf));
  return {{"samples", r.samples},
          {"injected", r.injected},
          {"seed", r.seed},
          {"n_max", r.n_max},
          {"acceptance_rate", r.acceptance_rate},
          {"nonlocal_count", r.nonlocal_count},
          {"entangled_count", r.entangled_count},
          {"separable_local", r.separable_local_count},
          {"entangled_local", r.entangled_local_count},
          {"entangled_nonlocal", r.entangled_nonlocal_count},
          {"chain_failures", r.chain_failures},
          {"min_reduced_margin", finite_or_null(r.min_reduced_margin)},
          {"min_simon_margin_nonlocal", finite_or_null(r.min_simon_margin_nonlocal)},
          {"counterexamples", counter}};
}

std::string to_text(const Analysis& a) {
  std::ostringstream os;
  os << std::setprecision(10);
  const StandardForm& sf = a.form;
  os << "purity          " << a.purity << '\n';
  os << "standard form   n=" << sf.n << " m=" << sf.m << " c1=" << sf.c1 << " c2=" << sf.c2 << '\n';
  os << "                c_tilde=" << sf.c_tilde() << " x=" << sf.x() << " x'=" << sf.x_prime()
     << " detV=" << sf.det() << '\n';
  os << "bell            bmax=" << a.bell.bmax << " margin=" << a.bell.margin << " A*=" << a.bell.a_star
     << " alpha_I*=" << a.bell.alpha_i_star << (a.bell.nonlocal ? " (nonlocal)" : " (local)") << '\n';
  if (a.oracle) {
    os << "bell oracle     bmax=" << a.oracle->bmax << (a.oracle->converged ? "" : " (not converged)") << '\n';
  }
  const EntanglementReport& e = a.entanglement;
  os << "simon           lhs=" << e.simon_lhs << " rhs=" << e.simon_rhs
     << (e.entangled ? " (entangled)" : " (separable)") << '\n';
  os << "ppt             nu_tilde=" << e.nu_tilde << " E_N=" << e.log_negativity << '\n';
  os << "mixedness       " << (a.mixedness.purity_bound_ok ? "ok" : "VIOLATED") << " / "
     << (a.mixedness.product_bound_ok ? "ok" : "VIOLATED") << '\n';
  os << "verdict         " << to_string(a.verdict) << '\n';
  return os.str();
}

std::vector<double> Range::values() const {
  const std::size_t count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

Range parse_range(const std::string& text) {
  const auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorKind::InvalidArgument, "range '" + text + "': " + why, std::numeric_limits<double>::quiet_NaN());
  };
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw bad("not a number");
    }
    if (used != item.size() || !std::isfinite(v)) throw bad("not a number");
    parts.push_back(v);
  }
  if (!text.empty() && text.back() == ':') throw bad("trailing ':'");
  Range r;
  if (parts.size() == 1) {
    r = {parts[0], parts[0], 1.0};
  } else if (parts.size() == 3) {
    r = {parts[0], parts[1], parts[2]};
  } else {
    throw bad("expected A or A:B:S");
  }
  if (!(r.step > 0.0)) throw bad("step must be > 0");
  if (r.stop < r.start) throw bad("empty range");
  return r;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  const std::vector<double> rs = cfg.r.values();
  const std::vector<double> thermals = cfg.thermal.values();
  const std::vector<double> etas = cfg.eta.values();
  const auto check = [](const std::vector<double>& vs, double lo, double hi, const char* name) {
    for (double v : vs) {
      if (!(v >= lo && v <= hi)) {
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " out of range: " + fmt17(v), v);
      }
    }
  };
  check(rs, 0.0, std::numeric_limits<double>::infinity(), "r");
  check(thermals, 0.0, std::numeric_limits<double>::infinity(), "thermal");
  check(etas, 0.0, 1.0, "eta");

  std::vector<SweepRow> rows;
  rows.reserve(rs.size() * thermals.size() * etas.size());
  for (double r : rs) {
    for (double n_th : thermals) {
      for (double eta : etas) {
        const Analysis a = analyze(validate_covariance(tmsv_matrix(r, n_th, eta)));
        rows.push_back({r, n_th, eta, a.form, a.purity, a.bell.bmax, a.bell.nonlocal, a.entanglement.simon_lhs,
                        a.entanglement.simon_rhs, a.entanglement.entangled, a.entanglement.log_negativity});
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& row : rows) {
    out << fmt17(row.r) << ',' << fmt17(row.n_th) << ',' << fmt17(row.eta) << ',' << fmt17(row.form.n) << ','
        << fmt17(row.form.m) << ',' << fmt17(row.form.c1) << ',' << fmt17(row.form.c2) << ','
        << fmt17(row.purity) << ',' << fmt17(row.bmax) << ',' << (row.nonlocal ? 1 : 0) << ','
        << fmt17(row.simon_lhs) << ',' << fmt17(row.simon_rhs) << ',' << (row.entangled ? 1 : 0) << ','
        << fmt17(row.log_negativity) << '\n';
  }
}

namespace {

int report_input_error(const Error& e, std::ostream& err) {
  switch (e.kind()) {
    case ErrorKind::Unphysical:
      err << "unphysical covariance: smallest eigenvalue of V + i*Omega/2 = " << std::setprecision(17) << e.value()
          << '\n';
      return exit_code::kUnphysical;
    case ErrorKind::NotSymmetric:
    case ErrorKind::SingularCovariance:
      err << "invalid covariance: " << e.what() << '\n';
      return exit_code::kUnphysical;
    default:
      err << "error: " << e.what() << '\n';
      return exit_code::kUsage;
  }
}

}  // namespace

int run_tmsv(double r, double n_th, double eta, const std::filesystem::path& out, std::ostream& log,
             std::ostream& err) {
  try {
    StateFile state;
    state.matrix = validate_covariance(tmsv_matrix(r, n_th, eta)).matrix();
    state.meta = {{"generator", "tmsv"}, {"r", r}, {"thermal", n_th}, {"eta", eta}};
    write_state_file(out, state);
    log << "wrote " << out.string() << '\n';
    return exit_code::kSuccess;
  } catch (const Error& e) {
    return report_input_error(e, err);
  }
}

int run_check(const std::filesystem::path& input, bool with_oracle, bool json, std::ostream& out,
              std::ostream& err) {
  Analysis a;
  try {
    a = analyze(read_state_file(input).covariance(), with_oracle);
  } catch (const Error& e) {
    return report_input_error(e, err);
  }
  if (json) {
    out << to_json(a).dump(2) << '\n';
  } else {
    out << to_text(a);
  }
  if (a.oracle && a.oracle->bmax > a.bell.bmax + 1e-6) {
    err << "warning: numeric maximum exceeds the closed form by " << a.oracle->bmax - a.bell.bmax << '\n';
  }
  if (a.verdict == Verdict::SeparableNonlocal) {
    err << "!!! THEOREM VIOLATION: state is nonlocal but separable !!!\n";
    return exit_code::kTheoremViolation;
  }
  return exit_code::kSuccess;
}

int run_sweep(const SweepConfig& cfg, std::ostream& log, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep(cfg);
  } catch (const Error& e) {
    return report_input_error(e, err);
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << cfg.out.string() << '\n';
    return exit_code::kUsage;
  }
  write_sweep_csv(file, rows);
  log << "wrote " << rows.size() << " rows to " << cfg.out.string() << '\n';
  return exit_code::kSuccess;
}

int run_verify(std::size_t samples, std::uint64_t seed, double n_max, bool json, unsigned threads,
               std::ostream& out, std::ostream& err) {
  if (samples < 1 || !(n_max > 0.5)) {
    err << "error: need samples >= 1 and n-max > 0.5\n";
    return exit_code::kUsage;
  }
  bool grids_ok = true;
  try {
    const std::vector<double> grid = unit_grid();
    (void)taylor_bound_check(grid);
    (void)taylor_remainder_decay();
  } catch (const Error& e) {
    err << "inequality grid failure: " << e.what() << '\n';
    grids_ok = false;
  }

  ScanConfig cfg;
  cfg.count = samples;
  cfg.seed = seed;
  cfg.n_max = n_max;
  cfg.threads = threads;
  ScanReport report;
  try {
    report = scan_nonlocal_implies_entangled(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  const bool ok = grids_ok && report.counterexamples.empty() && report.chain_failures == 0;
  if (json) {
    nlohmann::json j = to_json(report);
    j["grids_ok"] = grids_ok;
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  } else {
    out << "samples               " << report.samples << " (acceptance " << report.acceptance_rate << ")\n";
    out << "separable & local     " << report.separable_local_count << '\n';
    out << "entangled & local     " << report.entangled_local_count << '\n';
    out << "entangled & nonlocal  " << report.entangled_nonlocal_count << '\n';
    out << "separable & nonlocal  " << report.counterexamples.size() << '\n';
    out << "chain failures        " << report.chain_failures << '\n';
    out << "inequality grids      " << (grids_ok ? "ok" : "FAILED") << '\n';
  }
  if (!report.counterexamples.empty()) {
    err << "!!! THEOREM VIOLATION: " << report.counterexamples.size() << " nonlocal separable states\n";
    for (const StandardForm& sf : report.counterexamples) err << form_json(sf).dump() << '\n';
  }
  return ok ? exit_code::kSuccess : exit_code::kTheoremViolation;
}

}  // namespace cvbell
