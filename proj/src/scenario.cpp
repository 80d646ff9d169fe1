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

#include "fbqm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fbqm/checks.hpp"

namespace fbqm {

namespace {

using Json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kParse, path + ": " + msg);
}

void allow_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) parse_fail(path, "unknown field '" + it.key() + "'");
  }
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(path, "number is not finite");
  return x;
}

double number_or(const Json& obj, const char* key, double fallback,
                 const std::string& path) {
  return obj.contains(key) ? get_number(obj.at(key), path + "." + key) : fallback;
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

Complex get_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {get_number(j, path), 0.0};
  if (j.is_array() && j.size() == 2)
    return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
  parse_fail(path, "expected [re, im] or a real number");
}

Matrix parse_matrix(const Json& j, Eigen::Index dim, const std::string& path,
                    const std::string& label) {
  if (j.is_string()) return shorthand_matrix(get_string(j, path), dim);
  if (!j.is_array() || j.empty() || !j[0].is_array())
    parse_fail(path, "expected a shorthand name or a list of rows of [re, im] pairs");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      parse_fail(row_path, "rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = get_complex(row[c], row_path + "[" + std::to_string(c) + "]");
  }
  if (rows != dim || cols != dim) {
    std::ostringstream os;
    os << "term '" << label << "' is " << rows << "x" << cols << " in a dim-" << dim
       << " system (" << path << ")";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  return m;
}

Coefficient parse_coefficient(const Json& j, const std::string& path) {
  if (j.is_number()) return Coefficient::constant(get_number(j, path));
  allow_keys(j, path, {"type", "value", "coefficients", "amplitude", "omega", "phase", "rate"});
  if (!j.contains("type")) parse_fail(path, "missing 'type'");
  const std::string type = get_string(j.at("type"), path + ".type");
  auto reject = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (j.contains(k)) parse_fail(path, "field '" + std::string(k) + "' not used by '" + type + "'");
  };
  if (type == "constant") {
    reject({"coefficients", "amplitude", "omega", "phase", "rate"});
    if (!j.contains("value")) parse_fail(path, "constant needs 'value'");
    return Coefficient::constant(get_number(j.at("value"), path + ".value"));
  }
  if (type == "polynomial") {
    reject({"value", "amplitude", "omega", "phase", "rate"});
    if (!j.contains("coefficients") || !j.at("coefficients").is_array())
      parse_fail(path, "polynomial needs a 'coefficients' array");
    std::vector<double> c;
    for (std::size_t i = 0; i < j.at("coefficients").size(); ++i)
      c.push_back(get_number(j.at("coefficients")[i],
                             path + ".coefficients[" + std::to_string(i) + "]"));
    if (c.empty() || c.size() > 5) parse_fail(path, "polynomial degree must be 0..4");
    return Coefficient::polynomial(std::move(c));
  }
  if (type == "cos" || type == "sin") {
    reject({"value", "coefficients", "rate"});
    if (!j.contains("omega")) parse_fail(path, type + " needs 'omega'");
    const double amplitude = number_or(j, "amplitude", 1.0, path);
    const double omega = get_number(j.at("omega"), path + ".omega");
    const double phase = number_or(j, "phase", 0.0, path);
    return type == "cos" ? Coefficient::cos(amplitude, omega, phase)
                         : Coefficient::sin(amplitude, omega, phase);
  }
  if (type == "exp") {
    reject({"value", "coefficients", "omega", "phase"});
    if (!j.contains("rate")) parse_fail(path, "exp needs 'rate'");
    return Coefficient::exp(number_or(j, "amplitude", 1.0, path),
                            get_number(j.at("rate"), path + ".rate"));
  }
  parse_fail(path + ".type", "unknown coefficient type '" + type + "'");
}

// Hermitian-declared terms (the default when `hermitian_default` is set) are
// checked here so a bad Hamiltonian fails at load rather than mid-run.
std::vector<Term> parse_terms(const Json& j, Eigen::Index dim, const std::string& path,
                              bool hermitian_default, bool hermitian_required) {
  if (!j.is_array()) parse_fail(path, "expected a list of terms");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    allow_keys(t, tp, {"name", "matrix", "coefficient", "hermitian"});
    if (!t.contains("matrix")) parse_fail(tp, "missing 'matrix'");
    std::string name = t.contains("name") ? get_string(t.at("name"), tp + ".name") : tp;
    Matrix m = parse_matrix(t.at("matrix"), dim, tp + ".matrix", name);
    Coefficient c = t.contains("coefficient")
                        ? parse_coefficient(t.at("coefficient"), tp + ".coefficient")
                        : Coefficient::constant(1.0);
    bool hermitian = hermitian_default;
    if (t.contains("hermitian")) {
      if (!t.at("hermitian").is_boolean()) parse_fail(tp + ".hermitian", "expected a boolean");
      hermitian = t.at("hermitian").get<bool>();
    }
    if (hermitian_required && !hermitian)
      parse_fail(tp + ".hermitian", "terms here must be Hermitian");
    if (hermitian && hermiticity_defect(m) > 1e-12 * std::max(max_norm(m), 1e-300)) {
      throw Error(ErrorCode::kNotHermitian,
                  "term '" + name + "' is declared Hermitian but is not (" + tp + ")");
    }
    terms.push_back(Term{std::move(name), std::move(m), c});
  }
  return terms;
}

TimeMatrix parse_time_matrix(const Json& j, Eigen::Index dim, const std::string& path,
                             double max_condition_default, double* max_condition) {
  allow_keys(j, path, {"type", "base", "generator", "terms", "times", "matrices", "max_condition"});
  if (!j.contains("type")) parse_fail(path, "missing 'type'");
  const std::string type = get_string(j.at("type"), path + ".type");
  if (max_condition)
    *max_condition = number_or(j, "max_condition", max_condition_default, path);
  else if (j.contains("max_condition"))
    parse_fail(path, "unknown field 'max_condition'");
  auto only = [&](std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "type" || it.key() == "max_condition") continue;
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) parse_fail(path, "field '" + it.key() + "' not used by '" + type + "'");
    }
  };
  if (type == "identity") {
    only({});
    return TimeMatrix::identity(dim);
  }
  if (type == "exp_flow") {
    only({"base", "generator"});
    if (!j.contains("generator")) parse_fail(path, "exp_flow needs 'generator'");
    const Matrix base = j.contains("base")
                            ? parse_matrix(j.at("base"), dim, path + ".base", path + ".base")
                            : identity(dim);
    const Matrix gen =
        parse_matrix(j.at("generator"), dim, path + ".generator", path + ".generator");
    return TimeMatrix::exp_flow(base, gen);
  }
  if (type == "terms") {
    only({"terms"});
    if (!j.contains("terms")) parse_fail(path, "terms needs 'terms'");
    return TimeMatrix::terms(dim, parse_terms(j.at("terms"), dim, path + ".terms", false, false));
  }
  if (type == "tabulated") {
    only({"times", "matrices"});
    if (!j.contains("times") || !j.contains("matrices") || !j.at("times").is_array() ||
        !j.at("matrices").is_array())
      parse_fail(path, "tabulated needs 'times' and 'matrices' arrays");
    std::vector<double> times;
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < j.at("times").size(); ++i)
      times.push_back(get_number(j.at("times")[i], path + ".times[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < j.at("matrices").size(); ++i) {
      const std::string mp = path + ".matrices[" + std::to_string(i) + "]";
      mats.push_back(parse_matrix(j.at("matrices")[i], dim, mp, mp));
    }
    try {
      return TimeMatrix::tabulated(std::move(times), std::move(mats));
    } catch (const Error& e) {
      parse_fail(path, e.what());
    }
  }
  parse_fail(path + ".type", "unknown type '" + type + "'");
}

Vector parse_state(const Json& j, Eigen::Index dim, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected a list of amplitudes");
  if (static_cast<Eigen::Index>(j.size()) != dim) {
    std::ostringstream os;
    os << path << ": state has " << j.size() << " amplitudes in a dim-" << dim << " system";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = get_complex(j[i], path + "[" + std::to_string(i) + "]");
  if (!(v.norm() > 0.0)) parse_fail(path, "initial state must be nonzero");
  return v;
}

}  // namespace

Matrix shorthand_matrix(const std::string& name, Eigen::Index dim) {
  auto need_two = [&]() {
    if (dim != 2) {
      std::ostringstream os;
      os << "shorthand '" << name << "' is 2x2 but the system has dim " << dim;
      throw Error(ErrorCode::kDimensionMismatch, os.str());
    }
  };
  if (name == "sx") return need_two(), pauli_x();
  if (name == "sy") return need_two(), pauli_y();
  if (name == "sz") return need_two(), pauli_z();
  if (name == "n") return number_operator(dim);
  if (name == "a") return annihilation(dim);
  if (name == "adag") return creation(dim);
  if (name == "id") return identity(dim);
  if (name == "zero") return zeros(dim);
  throw Error(ErrorCode::kParse, "unknown matrix shorthand '" + name + "'");
}

Scenario parse_scenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  allow_keys(root, "scenario",
             {"name", "dim", "hbar", "window", "steps", "hamiltonian", "frame",
              "basis_drift", "gauge", "observables", "initial_state", "checks",
              "integrator", "output"});
  for (const char* key : {"dim", "window", "steps", "hamiltonian"})
    if (!root.contains(key)) parse_fail("scenario", std::string("missing '") + key + "'");

  const int dim_int = get_int(root.at("dim"), "dim");
  if (dim_int < 1) parse_fail("dim", "must be positive");
  const Eigen::Index dim = dim_int;

  const Json& window = root.at("window");
  if (!window.is_array() || window.size() != 2)
    parse_fail("window", "expected [t0, t1]");
  const double t0 = get_number(window[0], "window[0]");
  const double t1 = get_number(window[1], "window[1]");

  TimeMatrix hamiltonian = TimeMatrix::terms(
      dim, parse_terms(root.at("hamiltonian"), dim, "hamiltonian", true, true));

  double frame_cond = kDefaultFrameMaxCondition;
  FrameField frame = FrameField::identity(dim);
  if (root.contains("frame")) {
    const Json& f = root.at("frame");
    const bool is_identity =
        f.is_object() && f.contains("type") && f.at("type") == "identity";
    TimeMatrix l = parse_time_matrix(f, dim, "frame", kDefaultFrameMaxCondition, &frame_cond);
    if (!is_identity) frame = FrameField(std::move(l), frame_cond);
  }

  BasisDrift drift = BasisDrift::zero(dim);
  if (root.contains("basis_drift")) {
    const Json& d = root.at("basis_drift");
    allow_keys(d, "basis_drift", {"type", "terms"});
    if (!d.contains("type")) parse_fail("basis_drift", "missing 'type'");
    const std::string type = get_string(d.at("type"), "basis_drift.type");
    if (type == "terms") {
      if (!d.contains("terms")) parse_fail("basis_drift", "terms needs 'terms'");
      drift = BasisDrift(TimeMatrix::terms(
          dim, parse_terms(d.at("terms"), dim, "basis_drift.terms", false, false)));
    } else if (type != "zero") {
      parse_fail("basis_drift.type", "unknown type '" + type + "'");
    } else if (d.contains("terms")) {
      parse_fail("basis_drift", "field 'terms' not used by 'zero'");
    }
  }

  std::optional<GaugeSpec> gauge;
  if (root.contains("gauge")) {
    const Json& g = root.at("gauge");
    if (g.is_object() && g.contains("type") && g.at("type") == "heisenberg") {
      allow_keys(g, "gauge", {"type"});
      gauge = GaugeSpec{true, std::nullopt};
    } else {
      gauge = GaugeSpec{
          false, GaugeTransform::from_omega(parse_time_matrix(g, dim, "gauge", 0.0, nullptr))};
    }
  }

  std::vector<ObservableSpec> observables;
  std::set<std::string> observable_names;
  if (root.contains("observables")) {
    const Json& obs = root.at("observables");
    if (!obs.is_array()) parse_fail("observables", "expected a list");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const std::string op = "observables[" + std::to_string(i) + "]";
      allow_keys(obs[i], op, {"name", "matrix", "terms"});
      if (!obs[i].contains("name")) parse_fail(op, "missing 'name'");
      const std::string name = get_string(obs[i].at("name"), op + ".name");
      if (name.empty() || name.find_first_of(",\n\"") != std::string::npos)
        parse_fail(op + ".name", "names must be nonempty without commas or quotes");
      if (!observable_names.insert(name).second)
        parse_fail(op + ".name", "duplicate observable '" + name + "'");
      if (obs[i].contains("matrix") == obs[i].contains("terms"))
        parse_fail(op, "give exactly one of 'matrix' or 'terms'");
      std::vector<Term> terms;
      if (obs[i].contains("matrix")) {
        Matrix m = parse_matrix(obs[i].at("matrix"), dim, op + ".matrix", name);
        if (hermiticity_defect(m) > 1e-12 * std::max(max_norm(m), 1e-300))
          throw Error(ErrorCode::kNotHermitian, "observable '" + name + "' is not Hermitian");
        terms.push_back(Term{name, std::move(m), Coefficient::constant(1.0)});
      } else {
        terms = parse_terms(obs[i].at("terms"), dim, op + ".terms", true, true);
      }
      observables.emplace_back(name, TimeMatrix::terms(dim, std::move(terms)));
    }
  }

  Vector psi0 = Vector::Zero(dim);
  psi0(0) = 1.0;
  if (root.contains("initial_state")) psi0 = parse_state(root.at("initial_state"), dim, "initial_state");

  std::vector<CheckRequest> checks;
  if (root.contains("checks")) {
    const Json& c = root.at("checks");
    if (!c.is_array()) parse_fail("checks", "expected a list");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string cp = "checks[" + std::to_string(i) + "]";
      if (c[i].is_string()) {
        checks.push_back({c[i].get<std::string>(), std::nullopt});
      } else {
        allow_keys(c[i], cp, {"name", "tolerance"});
        if (!c[i].contains("name")) parse_fail(cp, "missing 'name'");
        CheckRequest req{get_string(c[i].at("name"), cp + ".name"), std::nullopt};
        if (c[i].contains("tolerance")) {
          req.tolerance = get_number(c[i].at("tolerance"), cp + ".tolerance");
          if (*req.tolerance < 0.0) parse_fail(cp + ".tolerance", "must be >= 0");
        }
        checks.push_back(std::move(req));
      }
    }
  }

  IntegratorOptions integrator;
  if (root.contains("integrator")) {
    const Json& in = root.at("integrator");
    allow_keys(in, "integrator", {"kernel", "fd_step"});
    if (in.contains("kernel")) {
      const std::string k = get_string(in.at("kernel"), "integrator.kernel");
      if (k == "midpoint") integrator.kernel = MagnusKernel::kMidpoint;
      else if (k == "gauss4") integrator.kernel = MagnusKernel::kGauss4;
      else parse_fail("integrator.kernel", "expected 'midpoint' or 'gauss4'");
    }
    integrator.fd_step = number_or(in, "fd_step", integrator.fd_step, "integrator");
    if (!(integrator.fd_step > 0.0) || integrator.fd_step >= 0.5)
      parse_fail("integrator.fd_step", "must be in (0, 0.5)");
  }

  OutputOptions output;
  if (root.contains("output")) {
    const Json& o = root.at("output");
    allow_keys(o, "output", {"format", "path", "sample_every"});
    if (o.contains("format")) {
      const std::string f = get_string(o.at("format"), "output.format");
      if (f == "json") output.format = OutputFormat::kJson;
      else if (f == "csv") output.format = OutputFormat::kCsv;
      else parse_fail("output.format", "expected 'json' or 'csv'");
    }
    if (o.contains("path")) output.path = get_string(o.at("path"), "output.path");
    if (o.contains("sample_every")) {
      output.sample_every = get_int(o.at("sample_every"), "output.sample_every");
      if (output.sample_every < 1) parse_fail("output.sample_every", "must be >= 1");
    }
  }

  Scenario s{
      .name = root.contains("name") ? get_string(root.at("name"), "name") : std::string(),
      .dim = dim,
      .hbar = root.contains("hbar") ? get_number(root.at("hbar"), "hbar") : 1.0,
      .t0 = t0,
      .t1 = t1,
      .steps = get_int(root.at("steps"), "steps"),
      .hamiltonian = std::move(hamiltonian),
      .frame = std::move(frame),
      .drift = std::move(drift),
      .gauge = std::move(gauge),
      .observables = std::move(observables),
      .initial_state = std::move(psi0),
      .checks = std::move(checks),
      .integrator = integrator,
      .output = output,
  };
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void validate_scenario(const Scenario& s) {
  if (s.steps < 2) parse_fail("steps", "must be >= 2");
  if (!(s.t1 > s.t0)) parse_fail("window", "need t1 > t0");
  if (!(s.hbar > 0.0) || !std::isfinite(s.hbar)) parse_fail("hbar", "must be positive");
  if (s.initial_state.size() != s.dim)
    throw Error(ErrorCode::kDimensionMismatch, "initial_state: size differs from dim");

  // Sample the frame (and an explicit gauge) across the window so singular
  // frames are reported at load time.
  constexpr int kSamples = 64;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = s.t0 + (s.t1 - s.t0) * k / kSamples;
    try {
      (void)s.frame.inverse_at(t);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "frame is singular at t=" << t << ": " << e.what();
      throw Error(ErrorCode::kSingularMatrix, os.str());
    }
    if (s.gauge && s.gauge->transform) {
      try {
        (void)inverse(s.gauge->transform->transposed(t));
      } catch (const Error& e) {
        std::ostringstream os;
        os << "gauge is singular at t=" << t << ": " << e.what();
        throw Error(ErrorCode::kSingularMatrix, os.str());
      }
    }
  }

  std::set<std::string> seen;
  for (const CheckRequest& req : s.checks) {
    const CheckInfo* info = find_check(req.name);
    if (!info) parse_fail("checks", "unknown check '" + req.name + "'");
    if (!seen.insert(req.name).second)
      parse_fail("checks", "check '" + req.name + "' requested twice");
    if (info->requires_zero_drift && !s.drift.is_zero())
      parse_fail("checks", "check '" + req.name + "' requires basis_drift zero");
    if (info->requires_constant_hamiltonian && !s.hamiltonian.is_constant())
      parse_fail("checks", "check '" + req.name + "' requires a constant Hamiltonian");
    if (info->requires_gauge && !s.gauge)
      parse_fail("checks", "check '" + req.name + "' requires a gauge");
  }
}

}  // namespace fbqm
