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

#include "fbqm/fbqm.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "fbqm/checks.hpp"
#include "fbqm/verify.hpp"

struct fbqm_scenario {
  fbqm::Scenario scenario;
};

struct fbqm_report {
  fbqm::Report report;
};

namespace {

thread_local std::string g_last_error;

fbqm_status to_status(fbqm::ErrorCode code) {
  using fbqm::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return FBQM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return FBQM_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNonSquare: return FBQM_ERR_NON_SQUARE;
    case ErrorCode::kNonFinite: return FBQM_ERR_NON_FINITE;
    case ErrorCode::kSingularMatrix: return FBQM_ERR_SINGULAR;
    case ErrorCode::kNotHermitian: return FBQM_ERR_NOT_HERMITIAN;
    case ErrorCode::kNotPositiveDefinite: return FBQM_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::kParse: return FBQM_ERR_PARSE;
    case ErrorCode::kIo: return FBQM_ERR_IO;
    case ErrorCode::kNumerical: return FBQM_ERR_NUMERICAL;
  }
  return FBQM_ERR_INTERNAL;
}

fbqm_status fail(fbqm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
fbqm_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FBQM_OK;
  } catch (const fbqm::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FBQM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FBQM_ERR_INTERNAL, e.what());
  }
}

std::string serialize(const fbqm::Report& report, fbqm_format format, bool timing) {
  return format == FBQM_FORMAT_CSV ? fbqm::to_csv(report) : fbqm::to_json(report, timing);
}

}  // namespace

extern "C" {

const char* fbqm_version(void) { return "0.1.0"; }

const char* fbqm_status_string(fbqm_status status) {
  switch (status) {
    case FBQM_OK: return "ok";
    case FBQM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FBQM_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case FBQM_ERR_NON_SQUARE: return "non-square matrix";
    case FBQM_ERR_NON_FINITE: return "non-finite value";
    case FBQM_ERR_SINGULAR: return "singular matrix";
    case FBQM_ERR_NOT_HERMITIAN: return "not Hermitian";
    case FBQM_ERR_NOT_POSITIVE_DEFINITE: return "not positive definite";
    case FBQM_ERR_PARSE: return "parse error";
    case FBQM_ERR_IO: return "I/O error";
    case FBQM_ERR_NUMERICAL: return "numerical failure";
    case FBQM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fbqm_last_error(void) { return g_last_error.c_str(); }

fbqm_status fbqm_scenario_load(const char* path, fbqm_scenario** out) {
  if (!path || !out) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new fbqm_scenario{fbqm::load_scenario(path)}; });
}

fbqm_status fbqm_scenario_load_string(const char* json, fbqm_scenario** out) {
  if (!json || !out) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new fbqm_scenario{fbqm::parse_scenario(json)}; });
}

fbqm_status fbqm_scenario_set_steps(fbqm_scenario* scenario, int steps) {
  if (!scenario) return fail(FBQM_ERR_INVALID_ARGUMENT, "null scenario");
  if (steps < 2) return fail(FBQM_ERR_INVALID_ARGUMENT, "steps must be >= 2");
  scenario->scenario.steps = steps;
  g_last_error.clear();
  return FBQM_OK;
}

fbqm_status fbqm_scenario_set_hbar(fbqm_scenario* scenario, double hbar) {
  if (!scenario) return fail(FBQM_ERR_INVALID_ARGUMENT, "null scenario");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    return fail(FBQM_ERR_INVALID_ARGUMENT, "hbar must be positive and finite");
  scenario->scenario.hbar = hbar;
  g_last_error.clear();
  return FBQM_OK;
}

fbqm_status fbqm_scenario_output(const fbqm_scenario* scenario, fbqm_format* format,
                                 const char** path) {
  if (!scenario) return fail(FBQM_ERR_INVALID_ARGUMENT, "null scenario");
  const fbqm::OutputOptions& o = scenario->scenario.output;
  if (format) *format = o.format == fbqm::OutputFormat::kCsv ? FBQM_FORMAT_CSV : FBQM_FORMAT_JSON;
  if (path) *path = o.path.c_str();
  return FBQM_OK;
}

void fbqm_scenario_free(fbqm_scenario* scenario) { delete scenario; }

fbqm_status fbqm_run(const fbqm_scenario* scenario, fbqm_report** out) {
  if (!scenario || !out) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new fbqm_report{fbqm::run_scenario(scenario->scenario)}; });
}

fbqm_status fbqm_verify(const char* suite, uint64_t seed, int dim_min, int dim_max,
                        int instances, fbqm_report** out) {
  if (!suite || !out) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fbqm::VerifyOptions options;
    options.suite = suite;
    options.seed = seed;
    options.dim_min = dim_min;
    options.dim_max = dim_max;
    options.instances = instances;
    *out = new fbqm_report{fbqm::verify(options)};
  });
}

int fbqm_report_passed(const fbqm_report* report) {
  return report && report->report.all_passed() ? 1 : 0;
}

size_t fbqm_report_check_count(const fbqm_report* report) {
  return report ? report->report.checks.size() : 0;
}

fbqm_status fbqm_report_check(const fbqm_report* report, size_t index, const char** name,
                              double* residual, double* tolerance, int* pass) {
  if (!report) return fail(FBQM_ERR_INVALID_ARGUMENT, "null report");
  if (index >= report->report.checks.size())
    return fail(FBQM_ERR_INVALID_ARGUMENT, "check index out of range");
  const fbqm::CheckResult& c = report->report.checks[index];
  if (name) *name = c.name.c_str();
  if (residual) *residual = c.residual;
  if (tolerance) *tolerance = c.tolerance;
  if (pass) *pass = c.pass ? 1 : 0;
  return FBQM_OK;
}

fbqm_status fbqm_report_serialize(const fbqm_report* report, fbqm_format format,
                                  int include_timing, char** out) {
  if (!report || !out) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string text = serialize(report->report, format, include_timing != 0);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

fbqm_status fbqm_report_write(const fbqm_report* report, fbqm_format format,
                              const char* path) {
  if (!report) return fail(FBQM_ERR_INVALID_ARGUMENT, "null report");
  return guarded([&] {
    const std::string text = serialize(report->report, format, true);
    if (!path || !*path) {
      std::fwrite(text.data(), 1, text.size(), stdout);
      std::fflush(stdout);
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw fbqm::Error(fbqm::ErrorCode::kIo, std::string("cannot write '") + path + "'");
    file << text;
    if (!file) throw fbqm::Error(fbqm::ErrorCode::kIo, std::string("write failed: ") + path);
  });
}

void fbqm_report_free(fbqm_report* report) { delete report; }

void fbqm_string_free(char* str) { std::free(str); }

fbqm_status fbqm_mat_exp(const double* in, size_t n, double* out) {
  if (!in || !out || n == 0) return fail(FBQM_ERR_INVALID_ARGUMENT, "null argument or n = 0");
  return guarded([&] {
    const auto dim = static_cast<Eigen::Index>(n);
    fbqm::Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        const size_t k = 2 * (static_cast<size_t>(i) * n + static_cast<size_t>(j));
        a(i, j) = fbqm::Complex(in[k], in[k + 1]);
      }
    const fbqm::Matrix e = fbqm::mat_exp(a);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        const size_t k = 2 * (static_cast<size_t>(i) * n + static_cast<size_t>(j));
        out[k] = e(i, j).real();
        out[k + 1] = e(i, j).imag();
      }
  });
}

}  // extern "C"
