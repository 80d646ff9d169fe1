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

#ifndef FBQM_FBQM_H_
#define FBQM_FBQM_H_

/* C interface to the fbqm library. All objects are opaque handles created
 * and released through this API. Functions return an fbqm_status; on
 * failure fbqm_last_error() describes the most recent error on the calling
 * thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(FBQM_BUILDING_LIBRARY)
#define FBQM_API __attribute__((visibility("default")))
#else
#define FBQM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fbqm_status {
  FBQM_OK = 0,
  FBQM_ERR_INVALID_ARGUMENT = 1,
  FBQM_ERR_DIMENSION_MISMATCH = 2,
  FBQM_ERR_NON_SQUARE = 3,
  FBQM_ERR_NON_FINITE = 4,
  FBQM_ERR_SINGULAR = 5,
  FBQM_ERR_NOT_HERMITIAN = 6,
  FBQM_ERR_NOT_POSITIVE_DEFINITE = 7,
  FBQM_ERR_PARSE = 8,
  FBQM_ERR_IO = 9,
  FBQM_ERR_NUMERICAL = 10,
  FBQM_ERR_INTERNAL = 11
} fbqm_status;

typedef enum fbqm_format { FBQM_FORMAT_JSON = 0, FBQM_FORMAT_CSV = 1 } fbqm_format;

typedef struct fbqm_scenario fbqm_scenario;
typedef struct fbqm_report fbqm_report;

FBQM_API const char* fbqm_version(void);
FBQM_API const char* fbqm_status_string(fbqm_status status);
/* Message of the last failed call on this thread; "" if none. */
FBQM_API const char* fbqm_last_error(void);

FBQM_API fbqm_status fbqm_scenario_load(const char* path, fbqm_scenario** out);
FBQM_API fbqm_status fbqm_scenario_load_string(const char* json, fbqm_scenario** out);
FBQM_API fbqm_status fbqm_scenario_set_steps(fbqm_scenario* scenario, int steps);
FBQM_API fbqm_status fbqm_scenario_set_hbar(fbqm_scenario* scenario, double hbar);
/* Output options stored in the scenario file; path is "" for stdout. */
FBQM_API fbqm_status fbqm_scenario_output(const fbqm_scenario* scenario,
                                          fbqm_format* format, const char** path);
FBQM_API void fbqm_scenario_free(fbqm_scenario* scenario);

FBQM_API fbqm_status fbqm_run(const fbqm_scenario* scenario, fbqm_report** out);
/* Randomized conformance suite on `instances` systems with dims in
 * [dim_min, dim_max]. */
FBQM_API fbqm_status fbqm_verify(const char* suite, uint64_t seed, int dim_min, int dim_max,
                                 int instances, fbqm_report** out);

FBQM_API int fbqm_report_passed(const fbqm_report* report);
FBQM_API size_t fbqm_report_check_count(const fbqm_report* report);
/* Borrowed name pointer valid while the report lives. Any out pointer may be
 * NULL. */
FBQM_API fbqm_status fbqm_report_check(const fbqm_report* report, size_t index,
                                       const char** name, double* residual,
                                       double* tolerance, int* pass);
/* Serialized report in a new string released with fbqm_string_free. */
FBQM_API fbqm_status fbqm_report_serialize(const fbqm_report* report, fbqm_format format,
                                           int include_timing, char** out);
/* Writes the report to `path`, or to stdout when path is NULL or "". */
FBQM_API fbqm_status fbqm_report_write(const fbqm_report* report, fbqm_format format,
                                       const char* path);
FBQM_API void fbqm_report_free(fbqm_report* report);
FBQM_API void fbqm_string_free(char* str);

/* exp(A) for an n x n complex matrix stored row-major as interleaved
 * (re, im) pairs: 2 n^2 doubles in and out. */
FBQM_API fbqm_status fbqm_mat_exp(const double* in, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FBQM_FBQM_H_ */
