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

// qrx: error-rate curves for displacement receivers on QPSK coherent states.
//
//   qrx ff-curve --stages 3,10 --grid 0.25:10:0.25 -o ff.csv
//   qrx dark-count-sweep --seed 11 --trials 100000
//   qrx static-curve --config run.json

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrx/curves.hpp"

namespace {

struct Flags {
  std::string config;
  std::string grid;
  std::vector<int> stages;
  std::string mode;
  std::optional<double> eta;
  std::optional<double> nu;
  std::vector<double> eta_list;
  std::vector<double> nu_list;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::optional<unsigned> threads;
  bool montecarlo = false;
  std::optional<double> heterodyne_scale;
  std::optional<int> restarts;
};

void add_common(CLI::App* sub, Flags& f, qrx::Command command) {
  sub->add_option("--config", f.config, "JSON run description; flags override its keys")
      ->check(CLI::ExistingFile);
  sub->add_option("--grid", f.grid, "alpha^2 grid: start:stop:step or a comma list");
  sub->add_option("-o,--output", f.output, "CSV output path (default stdout)");
  sub->add_option("--heterodyne-scale", f.heterodyne_scale,
                  "photon-number factor applied to the heterodyne reference");
  using qrx::Command;
  if (command == Command::bounds) return;
  sub->add_option("--eta", f.eta, "detector efficiency");
  if (command != Command::dark_count_sweep) sub->add_option("--nu", f.nu, "dark-count mean");
  if (command == Command::static_curve) {
    sub->add_option("--seed", f.seed, "seed for optimizer restarts (default 0)");
    sub->add_option("--restarts", f.restarts, "random optimizer restarts per point");
    return;
  }
  sub->add_option("--stages", f.stages, "feedforward stage counts N")->delimiter(',');
  sub->add_option("--mode", f.mode, "onoff, pnrd or both")
      ->check(CLI::IsMember({"onoff", "on-off", "pnrd", "both"}));
  sub->add_option("--trials", f.trials, "Monte Carlo trials per point");
  sub->add_option("--seed", f.seed, "Monte Carlo seed");
  sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  if (command == Command::ff_curve)
    sub->add_flag("--montecarlo", f.montecarlo, "use Monte Carlo even when nu = 0");
  if (command == Command::dark_count_sweep)
    sub->add_option("--nu-list", f.nu_list, "dark-count means")->delimiter(',');
  if (command == Command::efficiency_sweep)
    sub->add_option("--eta-list", f.eta_list, "detector efficiencies")->delimiter(',');
}

qrx::RunSpec build_spec(qrx::Command command, const Flags& f) {
  qrx::RunSpec spec;
  spec.command = command;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    std::stringstream text;
    text << in.rdbuf();
    qrx::apply_json(spec, text.str());
    spec.command = command;
  }
  if (!f.grid.empty()) spec.alpha_sq_grid = qrx::parse_grid(f.grid);
  if (!f.stages.empty()) spec.stages = f.stages;
  if (!f.mode.empty())
    spec.mode = f.mode == "both" ? std::nullopt
                                 : std::optional(qrx::parse_detection_mode(f.mode));
  if (f.eta) spec.eta = f.eta;
  if (f.nu) spec.nu = f.nu;
  if (!f.eta_list.empty()) spec.eta_list = f.eta_list;
  if (!f.nu_list.empty()) spec.nu_list = f.nu_list;
  if (f.trials) spec.trials = *f.trials;
  if (f.seed) spec.seed = f.seed;
  if (!f.output.empty()) spec.output_path = f.output;
  if (f.threads) spec.threads = *f.threads;
  if (f.montecarlo) spec.force_montecarlo = true;
  if (f.heterodyne_scale) spec.heterodyne_scale = *f.heterodyne_scale;
  if (f.restarts) spec.optimizer.random_restarts = *f.restarts;
  return spec;
}

int run_selftest() {
  const qrx::SelftestReport report = qrx::run_selftest();
  for (const auto& failure : report.failures) std::cerr << "FAIL " << failure << '\n';
  std::cout << (report.ok() ? "selftest passed: " : "selftest failed: ")
            << report.checks - static_cast<int>(report.failures.size()) << '/' << report.checks
            << " checks\n";
  return report.ok() ? 0 : 1;
}

int run_curve(const qrx::RunSpec& spec) {
  spec.validate();
  if (spec.needs_seed() && !spec.seed)
    throw std::invalid_argument(std::string(qrx::to_string(spec.command)) +
                                " uses Monte Carlo; pass --seed");
  const qrx::ErrorCurve curve = qrx::run(spec);
  if (spec.output_path.empty()) {
    qrx::write_csv(curve, std::cout);
    return 0;
  }
  std::ofstream out(spec.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + spec.output_path + " for writing");
  qrx::write_csv(curve, out);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + spec.output_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using qrx::Command;
  CLI::App app{"Error-rate curves for displacement receivers on QPSK coherent states"};
  app.require_subcommand(1);

  Flags flags;
  struct Entry {
    Command command;
    const char* help;
    CLI::App* sub = nullptr;
  };
  std::vector<Entry> entries{
      {Command::static_curve, "optimized static receiver with and without squeezing"},
      {Command::ff_curve, "feedforward receiver, exact when nu = 0"},
      {Command::dark_count_sweep, "feedforward receiver over dark-count levels (Monte Carlo)"},
      {Command::efficiency_sweep, "feedforward receiver over detector efficiencies (Monte Carlo)"},
      {Command::bounds, "Helstrom bound and heterodyne limit"},
      {Command::selftest, "quick internal consistency checks"},
  };
  for (auto& e : entries) {
    e.sub = app.add_subcommand(std::string(qrx::to_string(e.command)), e.help);
    if (e.command != Command::selftest) add_common(e.sub, flags, e.command);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& e : entries) {
      if (!e.sub->parsed()) continue;
      if (e.command == Command::selftest) return run_selftest();
      return run_curve(build_spec(e.command, flags));
    }
  } catch (const std::exception& err) {
    std::cerr << "qrx: " << err.what() << '\n';
    return 2;
  }
  return 1;
}
