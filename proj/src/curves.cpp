// Copyright 2026 The qrx Authors
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

#include "qrx/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qrx/bounds.hpp"

namespace qrx {

namespace {

constexpr double kDefaultEfficiencyNu = 1e-3;
const std::vector<double> kDefaultNuList{0.0, 1e-4, 1e-3, 1e-2};
const std::vector<double> kDefaultEtaList{1.0, 0.9, 0.8, 0.7};

std::string format_g(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::vector<DetectionMode> modes_of(const RunSpec& spec) {
  if (spec.mode) return {*spec.mode};
  return {DetectionMode::pnrd, DetectionMode::onoff};
}

std::uint64_t require_seed(const RunSpec& spec) {
  if (!spec.seed)
    throw std::invalid_argument(std::string(to_string(spec.command)) +
                                ": Monte Carlo runs need an explicit seed");
  return *spec.seed;
}

DetectorModel detector(double eta, double nu) {
  DetectorModel det;
  det.eta = eta;
  det.nu = nu;
  det.validate();
  return det;
}

// One feedforward curve over the grid. Exact unless nu > 0 or forced.
void append_ff_curve(ErrorCurve& out, const RunSpec& spec, int stages, DetectionMode mode,
                     const DetectorModel& det, bool montecarlo, const std::string& label) {
  for (double alpha_sq : spec.alpha_sq_grid) {
    FeedforwardConfig cfg;
    cfg.stages = stages;
    cfg.mode = mode;
    cfg.det = det;
    cfg.alphabet = PskAlphabet::qpsk(alpha_sq);
    const ErrorEstimate e = montecarlo
                                ? montecarlo_error_rate(cfg, spec.trials, require_seed(spec),
                                                        spec.threads)
                                : exact_error_rate(cfg);
    out.rows.push_back({alpha_sq, e.p_error, e.std_err, std::string(to_string(e.method)), label});
  }
}

void append_bound(ErrorCurve& out, const RunSpec& spec, const std::string& label,
                  double (*bound)(const RunSpec&, const PskAlphabet&)) {
  for (double alpha_sq : spec.alpha_sq_grid)
    out.rows.push_back(
        {alpha_sq, bound(spec, PskAlphabet::qpsk(alpha_sq)), 0.0, "closed_form", label});
}

double helstrom_of(const RunSpec&, const PskAlphabet& a) { return helstrom_qpsk(a); }
double heterodyne_of(const RunSpec& spec, const PskAlphabet& a) {
  return heterodyne_qpsk(a, spec.heterodyne_scale);
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::static_curve: return "static-curve";
    case Command::ff_curve: return "ff-curve";
    case Command::dark_count_sweep: return "dark-count-sweep";
    case Command::efficiency_sweep: return "efficiency-sweep";
    case Command::bounds: return "bounds";
    case Command::selftest: return "selftest";
  }
  return "?";
}

Command parse_command(std::string_view text) {
  for (Command c : {Command::static_curve, Command::ff_curve, Command::dark_count_sweep,
                    Command::efficiency_sweep, Command::bounds, Command::selftest})
    if (to_string(c) == text) return c;
  throw std::invalid_argument("unknown command '" + std::string(text) + "'");
}

std::vector<double> default_alpha_sq_grid() {
  std::vector<double> grid(40);
  for (size_t i = 0; i < grid.size(); ++i) grid[i] = 0.25 * static_cast<double>(i + 1);
  return grid;
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](const std::string& s) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw std::invalid_argument("bad number '" + s + "' in grid '" + std::string(text) + "'");
    return v;
  };

  const std::string s(text);
  std::vector<std::string> parts;
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) parts.push_back(part);

  std::vector<double> grid;
  if (sep == ':') {
    if (parts.size() != 3)
      throw std::invalid_argument("grid range must be start:stop:step, got '" + s + "'");
    const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || stop < start)
      throw std::invalid_argument("grid range needs step > 0 and stop >= start");
    const auto count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& p : parts) grid.push_back(number(p));
  }
  return grid;
}

void RunSpec::validate() const {
  if (alpha_sq_grid.empty()) throw std::invalid_argument("RunSpec: empty alpha^2 grid");
  for (size_t i = 0; i < alpha_sq_grid.size(); ++i) {
    if (!(alpha_sq_grid[i] >= 0.0) || !std::isfinite(alpha_sq_grid[i]))
      throw std::invalid_argument("RunSpec: alpha^2 values must be finite and >= 0");
    if (i > 0 && !(alpha_sq_grid[i] > alpha_sq_grid[i - 1]))
      throw std::invalid_argument("RunSpec: alpha^2 grid must be strictly ascending");
  }
  if (stages.empty()) throw std::invalid_argument("RunSpec: no stage counts given");
  for (int n : stages)
    if (n < 1) throw std::invalid_argument("RunSpec: stage counts must be >= 1");
  if (trials < 1) throw std::invalid_argument("RunSpec: trials must be >= 1");
  if (!(heterodyne_scale > 0.0))
    throw std::invalid_argument("RunSpec: heterodyne scale must be > 0");
  detector(eta.value_or(1.0), nu.value_or(0.0));
  for (double e : eta_list) detector(e, 0.0);
  for (double n : nu_list) detector(1.0, n);
}

bool RunSpec::needs_seed() const {
  switch (command) {
    case Command::dark_count_sweep:
    case Command::efficiency_sweep: return true;
    case Command::ff_curve: return force_montecarlo || nu.value_or(0.0) > 0.0;
    default: return false;
  }
}

void apply_json(RunSpec& spec, std::string_view json_text) {
  using nlohmann::json;
  const json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  static const std::set<std::string> known{
      "command", "alpha_sq_grid", "stages", "mode", "eta", "nu", "eta_list", "nu_list",
      "trials", "seed", "output", "threads", "montecarlo", "heterodyne_scale", "restarts"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");

  if (j.contains("command")) spec.command = parse_command(j["command"].get<std::string>());
  if (j.contains("alpha_sq_grid")) {
    const json& g = j["alpha_sq_grid"];
    spec.alpha_sq_grid =
        g.is_string() ? parse_grid(g.get<std::string>()) : g.get<std::vector<double>>();
  }
  if (j.contains("stages")) {
    const json& s = j["stages"];
    spec.stages = s.is_array() ? s.get<std::vector<int>>() : std::vector<int>{s.get<int>()};
  }
  if (j.contains("mode")) {
    const auto m = j["mode"].get<std::string>();
    spec.mode = m == "both" ? std::nullopt : std::optional(parse_detection_mode(m));
  }
  if (j.contains("eta")) spec.eta = j["eta"].get<double>();
  if (j.contains("nu")) spec.nu = j["nu"].get<double>();
  if (j.contains("eta_list")) spec.eta_list = j["eta_list"].get<std::vector<double>>();
  if (j.contains("nu_list")) spec.nu_list = j["nu_list"].get<std::vector<double>>();
  if (j.contains("trials")) spec.trials = j["trials"].get<std::int64_t>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output")) spec.output_path = j["output"].get<std::string>();
  if (j.contains("threads")) spec.threads = j["threads"].get<unsigned>();
  if (j.contains("montecarlo")) spec.force_montecarlo = j["montecarlo"].get<bool>();
  if (j.contains("heterodyne_scale")) spec.heterodyne_scale = j["heterodyne_scale"].get<double>();
  if (j.contains("restarts")) spec.optimizer.random_restarts = j["restarts"].get<int>();
}

std::vector<CurveRow> ErrorCurve::curve(std::string_view label) const {
  std::vector<CurveRow> out;
  for (const auto& r : rows)
    if (r.label == label) out.push_back(r);
  return out;
}

std::vector<std::string> ErrorCurve::labels() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), r.label) == out.end()) out.push_back(r.label);
  return out;
}

ErrorCurve run_static_curve(const RunSpec& spec) {
  spec.validate();
  const DetectorModel det = detector(spec.eta.value_or(1.0), spec.nu.value_or(0.0));
  const StaticCurvePair pair =
      sweep_curve_pair(spec.alpha_sq_grid, det, spec.seed.value_or(0), spec.optimizer);

  ErrorCurve out;
  auto add = [&](const std::vector<StaticCurvePoint>& points, const std::string& label) {
    for (const auto& p : points)
      out.rows.push_back({p.alpha_sq, p.result.best_error, 0.0,
                          p.result.converged ? "optimized" : "optimized-unconverged", label});
  };
  add(pair.squeezing_on, "squeeze_on");
  add(pair.squeezing_off, "squeeze_off");
  append_bound(out, spec, "helstrom", helstrom_of);
  append_bound(out, spec, "heterodyne", heterodyne_of);
  return out;
}

ErrorCurve run_ff_curve(const RunSpec& spec) {
  spec.validate();
  const DetectorModel det = detector(spec.eta.value_or(1.0), spec.nu.value_or(0.0));
  const bool montecarlo = spec.force_montecarlo || det.nu > 0.0;
  ErrorCurve out;
  for (int n : spec.stages)
    for (DetectionMode mode : modes_of(spec))
      append_ff_curve(out, spec, n, mode, det, montecarlo,
                      std::string(to_string(mode)) + "_N" + std::to_string(n));
  return out;
}

ErrorCurve run_dark_count_sweep(const RunSpec& spec) {
  spec.validate();
  const auto& nus = spec.nu_list.empty() ? kDefaultNuList : spec.nu_list;
  ErrorCurve out;
  for (DetectionMode mode : modes_of(spec))
    for (double nu : nus)
      append_ff_curve(out, spec, spec.stages.front(), mode, detector(spec.eta.value_or(1.0), nu),
                      true, std::string(to_string(mode)) + "_nu" + format_g(nu, 6));
  return out;
}

ErrorCurve run_efficiency_sweep(const RunSpec& spec) {
  spec.validate();
  const auto& etas = spec.eta_list.empty() ? kDefaultEtaList : spec.eta_list;
  const double nu = spec.nu.value_or(kDefaultEfficiencyNu);
  ErrorCurve out;
  for (DetectionMode mode : modes_of(spec))
    for (double eta : etas)
      append_ff_curve(out, spec, spec.stages.front(), mode, detector(eta, nu), true,
                      std::string(to_string(mode)) + "_eta" + format_g(eta, 6));
  append_bound(out, spec, "heterodyne", heterodyne_of);
  return out;
}

ErrorCurve run_bounds(const RunSpec& spec) {
  spec.validate();
  ErrorCurve out;
  append_bound(out, spec, "helstrom", helstrom_of);
  append_bound(out, spec, "heterodyne", heterodyne_of);
  return out;
}

ErrorCurve run(const RunSpec& spec) {
  switch (spec.command) {
    case Command::static_curve: return run_static_curve(spec);
    case Command::ff_curve: return run_ff_curve(spec);
    case Command::dark_count_sweep: return run_dark_count_sweep(spec);
    case Command::efficiency_sweep: return run_efficiency_sweep(spec);
    case Command::bounds: return run_bounds(spec);
    case Command::selftest: break;
  }
  throw std::invalid_argument("run: selftest produces no curve");
}

void write_csv(const ErrorCurve& curve, std::ostream& out) {
  out << "alpha_sq,p_error,std_err,method,label\n";
  for (const auto& r : curve.rows)
    out << format_g(r.alpha_sq, 12) << ',' << format_g(r.p_error, 12) << ','
        << format_g(r.std_err, 12) << ',' << r.method << ',' << r.label << '\n';
}

std::string to_csv(const ErrorCurve& curve) {
  std::ostringstream out;
  write_csv(curve, out);
  return out.str();
}

}  // namespace qrx
