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

#include "cvbell/state_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "state file: " + what, std::numeric_limits<double>::quiet_NaN());
}

double number_at(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) schema_error(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace

CovarianceMatrix StateFile::covariance() const {
  if (matrix) return validate_covariance(*matrix);
  if (standard_form) return to_covariance(*standard_form);
  schema_error("no state present");
}

StateFile state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) schema_error("top level must be an object");
  const bool has_matrix = j.contains("matrix");
  const bool has_form = j.contains("standard_form");
  if (has_matrix == has_form) schema_error("exactly one of 'matrix' or 'standard_form' is required");

  StateFile state;
  if (j.contains("meta")) {
    if (!j.at("meta").is_object()) schema_error("'meta' must be an object");
    state.meta = j.at("meta");
  }

  if (has_matrix) {
    if (!j.contains("ordering") || !j.at("ordering").is_string()) schema_error("'ordering' is required with 'matrix'");
    if (j.at("ordering").get<std::string>() != kOrdering) {
      schema_error("unsupported ordering '" + j.at("ordering").get<std::string>() + "', expected " + kOrdering);
    }
    const nlohmann::json& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 4) schema_error("'matrix' must have 4 rows");
    Matrix4 m;
    for (int r = 0; r < 4; ++r) {
      const nlohmann::json& row = rows.at(r);
      if (!row.is_array() || row.size() != 4) schema_error("'matrix' rows must have 4 entries");
      for (int c = 0; c < 4; ++c) {
        if (!row.at(c).is_number()) schema_error("'matrix' entries must be numbers");
        m(r, c) = row.at(c).get<double>();
      }
    }
    state.matrix = m;
  } else {
    const nlohmann::json& f = j.at("standard_form");
    if (!f.is_object()) schema_error("'standard_form' must be an object");
    state.standard_form = StandardForm{number_at(f, "n"), number_at(f, "m"), number_at(f, "c1"), number_at(f, "c2")};
  }
  return state;
}

nlohmann::json state_to_json(const StateFile& state) {
  nlohmann::json j;
  if (state.matrix) {
    j["ordering"] = kOrdering;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < 4; ++c) row.push_back((*state.matrix)(r, c));
      rows.push_back(row);
    }
    j["matrix"] = rows;
  } else if (state.standard_form) {
    const StandardForm& sf = *state.standard_form;
    j["standard_form"] = {{"n", sf.n}, {"m", sf.m}, {"c1", sf.c1}, {"c2", sf.c2}};
  }
  if (!state.meta.empty()) j["meta"] = state.meta;
  return j;
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

void write_state_file(const std::filesystem::path& path, const StateFile& state) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string(), std::numeric_limits<double>::quiet_NaN());
  }
  out << state_to_json(state).dump(2) << '\n';
}

StandardForm tmsv_standard_form(double r) {
  const double c = 0.5 * std::sinh(2.0 * r);
  const double n = 0.5 * std::cosh(2.0 * r);
  return {n, n, c, -c};
}

Matrix4 tmsv_matrix(double r, double n_th, double eta) {
  if (!(r >= 0.0) || !(n_th >= 0.0) || !(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "tmsv parameters out of range (r >= 0, n_th >= 0, 0 <= eta <= 1)", eta);
  }
  const Matrix4 v = tmsv_standard_form(r).matrix();
  if (eta == 1.0) return v + n_th * Matrix4::Identity();
  return eta * v + (1.0 - eta) * (n_th + 0.5) * Matrix4::Identity();
}

}  // namespace cvbell
