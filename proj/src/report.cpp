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

#include "fbqm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace fbqm {

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void Report::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

namespace {

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string format15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

std::string to_json(const Report& report, bool include_timing) {
  nlohmann::ordered_json out;
  out["kind"] = report.kind;
  if (!report.scenario.empty()) out["scenario"] = report.scenario;
  out["passed"] = report.all_passed();

  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["equation"] = c.equation;
    entry["residual"] = number(c.residual);
    entry["tolerance"] = number(c.tolerance);
    entry["pass"] = c.pass;
    checks.push_back(std::move(entry));
  }
  out["checks"] = std::move(checks);

  nlohmann::ordered_json meta;
  if (report.kind == "verify") {
    meta["suite"] = report.suite;
    meta["seed"] = report.seed;
    meta["dims"] = {report.dim_min, report.dim_max};
    meta["instance_count"] = report.instances.size();
    meta["steps"] = report.steps;
    meta["kernel"] = report.kernel;
  } else {
    meta["dim"] = report.dim;
    meta["steps"] = report.steps;
    meta["fd_step"] = report.fd_step;
    meta["kernel"] = report.kernel;
  }
  if (include_timing) meta["wall_time_seconds"] = report.wall_time_seconds;
  out["metadata"] = std::move(meta);

  if (!report.instances.empty()) {
    nlohmann::ordered_json instances = nlohmann::ordered_json::array();
    for (const InstanceSummary& inst : report.instances) {
      nlohmann::ordered_json entry;
      entry["index"] = inst.index;
      entry["dim"] = inst.dim;
      entry["passed"] = inst.passed;
      entry["failed_checks"] = inst.failed_checks;
      instances.push_back(std::move(entry));
    }
    out["instances"] = std::move(instances);
  }

  if (!report.trajectory.empty()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TrajectoryRow& row : report.trajectory) {
      nlohmann::ordered_json entry;
      entry["t"] = row.t;
      nlohmann::ordered_json expectations;
      for (std::size_t i = 0; i < report.observable_names.size(); ++i) {
        expectations[report.observable_names[i]] = {
            {"hilbert", number(row.hilbert[i])}, {"bundle", number(row.bundle[i])}};
      }
      entry["expectations"] = std::move(expectations);
      entry["unitarity_residual"] = number(row.unitarity_residual);
      entry["d5_10_residual"] = number(row.central_identity_residual);
      entry["d5_13_residual"] = number(row.bundle_schrodinger_residual);
      rows.push_back(std::move(entry));
    }
    out["trajectory"] = std::move(rows);
  }
  return out.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::string out = "t";
  for (const std::string& name : report.observable_names)
    out += "," + name + "_hilbert," + name + "_bundle";
  out += ",unitarity_residual,d5_10_residual,d5_13_residual\n";
  for (const TrajectoryRow& row : report.trajectory) {
    out += format15(row.t);
    for (std::size_t i = 0; i < report.observable_names.size(); ++i)
      out += "," + format15(row.hilbert[i]) + "," + format15(row.bundle[i]);
    out += "," + format15(row.unitarity_residual) + "," +
           format15(row.central_identity_residual) + "," +
           format15(row.bundle_schrodinger_residual) + "\n";
  }
  return out;
}

}  // namespace fbqm
