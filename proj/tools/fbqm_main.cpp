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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fbqm/fbqm.h"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitError = 2;

int report_error(const char* what, fbqm_status status) {
  std::fprintf(stderr, "fbqm: %s: %s: %s\n", what, fbqm_status_string(status),
               fbqm_last_error());
  return kExitError;
}

bool parse_format(const std::string& text, fbqm_format* format) {
  if (text == "json") *format = FBQM_FORMAT_JSON;
  else if (text == "csv") *format = FBQM_FORMAT_CSV;
  else return false;
  return true;
}

// Prints one line per failing check to stderr and returns the exit code.
int finish(fbqm_report* report, fbqm_format format, const std::string& output) {
  fbqm_status status = fbqm_report_write(report, format, output.c_str());
  if (status != FBQM_OK) {
    fbqm_report_free(report);
    return report_error("writing report", status);
  }
  const size_t count = fbqm_report_check_count(report);
  for (size_t i = 0; i < count; ++i) {
    const char* name = nullptr;
    double residual = 0.0, tolerance = 0.0;
    int pass = 0;
    fbqm_report_check(report, i, &name, &residual, &tolerance, &pass);
    if (!pass)
      std::fprintf(stderr, "FAIL %s: residual %.3e, tolerance %.3e\n", name, residual,
                   tolerance);
  }
  const int passed = fbqm_report_passed(report);
  fbqm_report_free(report);
  return passed ? 0 : kExitFailedChecks;
}

struct RunArgs {
  std::string scenario;
  int steps = 0;
  double hbar = 0.0;
  std::string output;
  std::string format;
};

int run_command(const RunArgs& args) {
  fbqm_scenario* scenario = nullptr;
  fbqm_status status = fbqm_scenario_load(args.scenario.c_str(), &scenario);
  if (status != FBQM_OK) return report_error("loading scenario", status);
  if (args.steps > 0 && (status = fbqm_scenario_set_steps(scenario, args.steps)) != FBQM_OK) {
    fbqm_scenario_free(scenario);
    return report_error("--steps", status);
  }
  if (args.hbar != 0.0 && (status = fbqm_scenario_set_hbar(scenario, args.hbar)) != FBQM_OK) {
    fbqm_scenario_free(scenario);
    return report_error("--hbar", status);
  }
  fbqm_format format = FBQM_FORMAT_JSON;
  const char* file_path = "";
  fbqm_scenario_output(scenario, &format, &file_path);
  std::string output = args.output.empty() ? file_path : args.output;
  if (!args.format.empty()) parse_format(args.format, &format);

  fbqm_report* report = nullptr;
  status = fbqm_run(scenario, &report);
  fbqm_scenario_free(scenario);
  if (status != FBQM_OK) return report_error("run", status);
  return finish(report, format, output);
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string dims = "2..6";
  int instances = 20;
  std::string output;
};

bool parse_dims(const std::string& text, int* lo, int* hi) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      *lo = *hi = std::stoi(text);
    } else {
      *lo = std::stoi(text.substr(0, dots));
      *hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return *lo >= 1 && *hi >= *lo;
}

int verify_command(const VerifyArgs& args) {
  int lo = 0, hi = 0;
  if (!parse_dims(args.dims, &lo, &hi)) {
    std::fprintf(stderr, "fbqm: --dims expects N or A..B with 1 <= A <= B\n");
    return kExitError;
  }
  fbqm_report* report = nullptr;
  const fbqm_status status =
      fbqm_verify(args.suite.c_str(), args.seed, lo, hi, args.instances, &report);
  if (status != FBQM_OK) return report_error("verify", status);
  return finish(report, FBQM_FORMAT_JSON, args.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibre-bundle quantum dynamics: identity checks and conformance suite"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fbqm_version());

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run the checks of a scenario file");
  run->add_option("--scenario", run_args.scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--steps", run_args.steps, "Override the number of time steps")
      ->check(CLI::Range(2, 100000000));
  run->add_option("--hbar", run_args.hbar, "Override hbar")->check(CLI::PositiveNumber);
  run->add_option("--output", run_args.output, "Report path (default: scenario setting or stdout)");
  run->add_option("--format", run_args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run the randomized conformance suite");
  verify->add_option("--suite", verify_args.suite, "all, evolution, transport, gauge, observables")
      ->check(CLI::IsMember({"all", "evolution", "transport", "gauge", "observables"}))
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "Random seed")->required();
  verify->add_option("--dims", verify_args.dims, "Dimension range A..B")->capture_default_str();
  verify->add_option("--instances", verify_args.instances, "Number of random systems")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  verify->add_option("--output", verify_args.output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  if (run->parsed()) return run_command(run_args);
  return verify_command(verify_args);
}
