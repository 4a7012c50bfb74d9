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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrx/feedforward.hpp"
#include "qrx/optimizer.hpp"

namespace qrx {

enum class Command { static_curve, ff_curve, dark_count_sweep, efficiency_sweep, bounds, selftest };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

/// 0.25, 0.5, ..., 10.
std::vector<double> default_alpha_sq_grid();

/// "start:stop:step" (stop included when it lands on the lattice) or a
/// comma-separated list.
std::vector<double> parse_grid(std::string_view text);

/// Everything a CLI run needs. Fields left unset pick the per-command
/// defaults listed next to each run_* function.
struct RunSpec {
  Command command = Command::bounds;
  std::vector<double> alpha_sq_grid = default_alpha_sq_grid();
  std::vector<int> stages{3};
  std::optional<DetectionMode> mode;  // unset: both modes
  std::optional<double> eta;  // default 1
  std::optional<double> nu;   // default 0, or 1e-3 for efficiency-sweep
  std::vector<double> eta_list;
  std::vector<double> nu_list;
  std::int64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  std::string output_path;
  unsigned threads = 0;
  /// Forces Monte Carlo even where exact enumeration applies.
  bool force_montecarlo = false;
  double heterodyne_scale = 1.0;
  StaticOptimizerOptions optimizer{};

  void validate() const;
  bool needs_seed() const;
};

/// Overlays the keys present in a JSON object onto `spec`. Unknown keys are
/// rejected so typos do not silently fall back to defaults.
void apply_json(RunSpec& spec, std::string_view json_text);

struct CurveRow {
  double alpha_sq = 0.0;
  double p_error = 0.0;
  double std_err = 0.0;
  std::string method;
  std::string label;
};

/// Rows of one or more labelled curves, each in grid order.
struct ErrorCurve {
  std::vector<CurveRow> rows;

  std::vector<CurveRow> curve(std::string_view label) const;
  std::vector<std::string> labels() const;
};

/// Labels squeeze_on, squeeze_off, helstrom, heterodyne. Optimizer rows that
/// did not converge carry method "optimized-unconverged".
ErrorCurve run_static_curve(const RunSpec& spec);

/// One curve per (N, mode), labelled e.g. "pnrd_N3". Exact when nu = 0,
/// Monte Carlo otherwise.
ErrorCurve run_ff_curve(const RunSpec& spec);

/// Monte Carlo curves at N = 3, eta = 1 by default over nu_list (default
/// 0, 1e-4, 1e-3, 1e-2), labelled e.g. "onoff_nu0.001".
ErrorCurve run_dark_count_sweep(const RunSpec& spec);

/// Monte Carlo curves at N = 3, nu = 1e-3 by default over eta_list (default
/// 1, 0.9, 0.8, 0.7), labelled e.g. "pnrd_eta0.7", plus "heterodyne".
ErrorCurve run_efficiency_sweep(const RunSpec& spec);

/// Labels helstrom and heterodyne.
ErrorCurve run_bounds(const RunSpec& spec);

/// Dispatches on spec.command (selftest is handled by run_selftest).
ErrorCurve run(const RunSpec& spec);

/// `alpha_sq,p_error,std_err,method,label` with 12 significant digits and
/// LF line endings.
void write_csv(const ErrorCurve& curve, std::ostream& out);
std::string to_csv(const ErrorCurve& curve);

struct SelftestReport {
  std::vector<std::string> failures;
  int checks = 0;

  bool ok() const { return failures.empty(); }
};

/// Fast cross-checks between independent routes through the library.
SelftestReport run_selftest();

}  // namespace qrx
