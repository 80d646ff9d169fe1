// Copyright 2026 The fbqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fbqm/fbqm.h"

namespace {

std::string scenario_path(const char* name) {
  const char* dir = std::getenv("FBQM_SCENARIO_DIR");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name + ".json";
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(fbqm_version()) > 0);
  CHECK(std::string(fbqm_status_string(FBQM_OK)) == "ok");
  CHECK(std::strlen(fbqm_status_string(FBQM_ERR_PARSE)) > 0);
  CHECK(std::strlen(fbqm_status_string(static_cast<fbqm_status>(99))) > 0);
}

TEST_CASE("load, run and inspect a scenario") {
  fbqm_scenario* s = nullptr;
  REQUIRE(fbqm_scenario_load(scenario_path("sigma_z_closed_form").c_str(), &s) == FBQM_OK);
  fbqm_format fmt = FBQM_FORMAT_CSV;
  const char* path = nullptr;
  REQUIRE(fbqm_scenario_output(s, &fmt, &path) == FBQM_OK);
  CHECK(fmt == FBQM_FORMAT_JSON);
  CHECK(std::string(path).empty());

  fbqm_report* r = nullptr;
  REQUIRE(fbqm_run(s, &r) == FBQM_OK);
  CHECK(fbqm_report_passed(r) == 1);
  const size_t n = fbqm_report_check_count(r);
  CHECK(n == 11);
  bool saw_closed_form = false;
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    double residual = -1, tolerance = -1;
    int pass = -1;
    REQUIRE(fbqm_report_check(r, i, &name, &residual, &tolerance, &pass) == FBQM_OK);
    CHECK(pass == 1);
    CHECK(std::isfinite(residual));
    if (std::string(name) == "closed_form_propagator") {
      saw_closed_form = true;
      CHECK(residual <= 1e-8);
    }
  }
  CHECK(saw_closed_form);
  CHECK(fbqm_report_check(r, n, nullptr, nullptr, nullptr, nullptr) == FBQM_ERR_INVALID_ARGUMENT);

  char* json = nullptr;
  REQUIRE(fbqm_report_serialize(r, FBQM_FORMAT_JSON, 0, &json) == FBQM_OK);
  CHECK(std::string(json).find("\"closed_form_propagator\"") != std::string::npos);
  CHECK(std::string(json).find("wall_time_seconds") == std::string::npos);
  fbqm_string_free(json);
  char* csv = nullptr;
  REQUIRE(fbqm_report_serialize(r, FBQM_FORMAT_CSV, 1, &csv) == FBQM_OK);
  CHECK(std::string(csv).rfind("t,sx_hilbert", 0) == 0);
  fbqm_string_free(csv);

  fbqm_report_free(r);
  fbqm_scenario_free(s);
}

TEST_CASE("overrides are validated") {
  fbqm_scenario* s = nullptr;
  REQUIRE(fbqm_scenario_load(scenario_path("sigma_z_closed_form").c_str(), &s) == FBQM_OK);
  CHECK(fbqm_scenario_set_steps(s, 1) == FBQM_ERR_INVALID_ARGUMENT);
  CHECK(fbqm_scenario_set_hbar(s, -1.0) == FBQM_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(fbqm_last_error()) > 0);
  CHECK(fbqm_scenario_set_steps(s, 400) == FBQM_OK);
  CHECK(fbqm_scenario_set_hbar(s, 2.0) == FBQM_OK);
  fbqm_report* r = nullptr;
  REQUIRE(fbqm_run(s, &r) == FBQM_OK);
  CHECK(fbqm_report_check_count(r) == 11);
  fbqm_report_free(r);
  fbqm_scenario_free(s);
}

TEST_CASE("errors map to status codes") {
  fbqm_scenario* s = nullptr;
  CHECK(fbqm_scenario_load("/nonexistent/file.json", &s) == FBQM_ERR_IO);
  CHECK(s == nullptr);
  CHECK(fbqm_scenario_load_string("{\"dim\": 2,", &s) == FBQM_ERR_PARSE);
  CHECK(std::string(fbqm_last_error()).find("line") != std::string::npos);
  CHECK(fbqm_scenario_load_string(
            R"({"dim": 2, "window": [0, 1], "steps": 10,
                "hamiltonian": [{"name": "bad", "matrix": [[[0,0],[1,0]],[[0,0],[0,0]]]}]})",
            &s) == FBQM_ERR_NOT_HERMITIAN);
  CHECK(fbqm_scenario_load_string(
            R"({"dim": 3, "window": [0, 1], "steps": 10,
                "hamiltonian": [{"name": "z", "matrix": "sz"}]})",
            &s) == FBQM_ERR_DIMENSION_MISMATCH);
  CHECK(fbqm_scenario_load(nullptr, &s) == FBQM_ERR_INVALID_ARGUMENT);
  CHECK(fbqm_run(nullptr, nullptr) == FBQM_ERR_INVALID_ARGUMENT);
  fbqm_report* r = nullptr;
  CHECK(fbqm_verify("bogus", 1, 2, 3, 1, &r) == FBQM_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
}

TEST_CASE("verify through the C interface is deterministic") {
  fbqm_report* a = nullptr;
  fbqm_report* b = nullptr;
  REQUIRE(fbqm_verify("observables", 42, 2, 3, 2, &a) == FBQM_OK);
  REQUIRE(fbqm_verify("observables", 42, 2, 3, 2, &b) == FBQM_OK);
  CHECK(fbqm_report_passed(a) == 1);
  char* ja = nullptr;
  char* jb = nullptr;
  REQUIRE(fbqm_report_serialize(a, FBQM_FORMAT_JSON, 0, &ja) == FBQM_OK);
  REQUIRE(fbqm_report_serialize(b, FBQM_FORMAT_JSON, 0, &jb) == FBQM_OK);
  CHECK(std::string(ja) == std::string(jb));
  fbqm_string_free(ja);
  fbqm_string_free(jb);
  fbqm_report_free(a);
  fbqm_report_free(b);
}

TEST_CASE("matrix exponential") {
  // exp(i theta sx) = cos(theta) I + i sin(theta) sx
  const double theta = 0.7;
  const double in[8] = {0, 0, 0, theta, 0, theta, 0, 0};
  double out[8];
  REQUIRE(fbqm_mat_exp(in, 2, out) == FBQM_OK);
  const double expected[8] = {std::cos(theta), 0, 0, std::sin(theta),
                              0, std::sin(theta), std::cos(theta), 0};
  for (int i = 0; i < 8; ++i) CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-14));
  const double bad[2] = {NAN, 0};
  CHECK(fbqm_mat_exp(bad, 1, out) == FBQM_ERR_NON_FINITE);
  CHECK(fbqm_mat_exp(nullptr, 2, out) == FBQM_ERR_INVALID_ARGUMENT);
}
