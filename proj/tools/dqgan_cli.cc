// Copyright 2026 The dqgan-sim Authors
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

// Command-line front end for the simulator.
//
//   dqgan_cli run    --config run.cfg --out out/ [--seed N] [--override k=v]...
//   dqgan_cli sweep  --config run.cfg --workers 1,2,4,8 --replicates 10
//   dqgan_cli certify --compressor bits:8:max --dim 16
//   dqgan_cli bounds --config run.cfg
//
// Exit status: 0 success, 3 the run diverged, 1 any other error.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqgan/config.h"
#include "dqgan/harness.h"
#include "dqgan/quantize.h"
#include "json.hpp"

namespace {

constexpr int kExitDiverged = 3;
constexpr int kExitError = 1;

struct ConfigFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void AddConfigFlags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file (key = value)");
  cmd->add_option("--seed", flags.seed, "Overrides run.seed");
  cmd->add_option("--override", flags.overrides,
                  "key=value, applied after the file (repeatable)");
}

dqgan::RunConfig LoadConfig(const ConfigFlags& flags) {
  dqgan::RunConfig config;
  if (!flags.config_path.empty()) {
    config = dqgan::LoadConfigFile(flags.config_path);
  }
  for (const std::string& o : flags.overrides) dqgan::ApplyOverride(config, o);
  if (flags.seed) config.seed = *flags.seed;
  dqgan::ValidateConfig(config);
  return config;
}

nlohmann::ordered_json BoundsJson(const dqgan::BoundReport& b) {
  nlohmann::ordered_json j;
  j["delta"] = b.delta ? nlohmann::ordered_json(*b.delta) : nullptr;
  j["lipschitz"] = b.lipschitz;
  j["gradient_bound"] = b.gradient_bound;
  j["sigma"] = b.sigma;
  j["step_size_limit"] = b.step_size_limit;
  j["error_bound"] = b.error_bound ? nlohmann::ordered_json(*b.error_bound) : nullptr;
  if (b.convergence_bound) {
    j["convergence_bound"] = {{"total", b.convergence_bound->total()},
                     {"initial", b.convergence_bound->initial},
                     {"noise", b.convergence_bound->noise},
                     {"heterogeneity", b.convergence_bound->heterogeneity},
                     {"compression", b.convergence_bound->compression},
                     {"variance", b.convergence_bound->variance},
                     {"step_size_admissible",
                      b.convergence_bound->step_size_admissible}};
  } else {
    j["convergence_bound"] = nullptr;
  }
  return j;
}

int RunCommand(const ConfigFlags& flags, const std::string& out_dir) {
  const dqgan::RunConfig config = LoadConfig(flags);
  const dqgan::ExperimentReport report =
      dqgan::RunExperiment(config, std::filesystem::path(out_dir));
  std::cout << dqgan::SummaryJson(report);
  if (report.status == dqgan::RunStatus::kDiverged) {
    std::cerr << "diverged: " << report.reason << "\n";
    return kExitDiverged;
  }
  return 0;
}

int SweepCommand(const ConfigFlags& flags, const std::vector<std::size_t>& ms,
                 std::size_t replicates, const std::string& out_path) {
  const dqgan::RunConfig config = LoadConfig(flags);
  const dqgan::SweepResult result = dqgan::SpeedupSweep(config, ms, replicates);
  std::string table = "workers,eta,mean_plateau,stderr_plateau,bits_up\n";
  for (const dqgan::SweepRow& row : result.rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%llu\n",
                  row.workers, row.eta, row.mean_plateau, row.stderr_plateau,
                  static_cast<unsigned long long>(row.bits_up));
    table += line;
  }
  std::cout << table;
  std::printf("slope %.6f\n", result.slope);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw dqgan::InvalidArgument("cannot write " + out_path);
    out << table;
  }
  return 0;
}

int CertifyCommand(const std::string& spec_text, std::size_t dim,
                   std::size_t samples, std::uint64_t seed) {
  const dqgan::CompressorSpec spec = dqgan::CompressorSpec::Parse(spec_text);
  spec.Validate(dim);
  dqgan::Rng rng(dqgan::DeriveSeed(seed, 0, 0, dqgan::StreamKind::kAux));
  const double empirical = dqgan::CertifyDelta(spec, dim, samples, rng);
  const auto bound = dqgan::DeltaLowerBound(spec, dim);
  nlohmann::ordered_json j;
  j["compressor"] = spec.ToString();
  j["dimension"] = dim;
  j["samples"] = samples;
  j["empirical_delta"] = empirical;
  j["certified_delta"] = bound ? nlohmann::ordered_json(*bound) : nullptr;
  j["payload_bits"] = dqgan::PayloadBits(spec, dim);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int BoundsCommand(const ConfigFlags& flags) {
  const dqgan::RunConfig config = LoadConfig(flags);
  const auto problem = dqgan::BuildProblem(config.problem);
  const dqgan::ParamVector w0 = dqgan::InitialIterate(config, *problem);
  double eta = config.eta;
  const double limit =
      dqgan::StepSizeLimit(config.batch, config.workers, problem->lipschitz());
  if (config.clamp_eta) eta = std::min(eta, limit);
  nlohmann::ordered_json j;
  j["problem"] = problem->name();
  j["dimension"] = problem->dim();
  j["eta"] = eta;
  j["bounds"] = BoundsJson(dqgan::ComputeBounds(config, *problem, eta, w0));
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed quantized saddle-point simulator"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string out_dir = "out";
  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  AddConfigFlags(run, run_flags);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();

  ConfigFlags sweep_flags;
  std::vector<std::size_t> worker_counts = {1, 2, 4, 8};
  std::size_t replicates = 10;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "Worker-count sweep");
  AddConfigFlags(sweep, sweep_flags);
  sweep->add_option("--workers", worker_counts, "Worker counts")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--replicates", replicates, "Seeds per worker count")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "Write the table as CSV");

  std::string spec_text = "topk:1";
  std::size_t dim = 16;
  std::size_t samples = 10000;
  std::uint64_t certify_seed = 0;
  CLI::App* certify =
      app.add_subcommand("certify", "Empirical delta of a compressor");
  certify->add_option("--compressor", spec_text,
                      "identity | topk:K | bits:M[:max|l2]")
      ->capture_default_str();
  certify->add_option("--dim", dim, "Vector dimension")->capture_default_str();
  certify->add_option("--samples", samples, "Probe vectors")
      ->capture_default_str();
  certify->add_option("--seed", certify_seed, "Seed")->capture_default_str();

  ConfigFlags bounds_flags;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Print theoretical bounds for a config");
  AddConfigFlags(bounds, bounds_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return RunCommand(run_flags, out_dir);
    if (sweep->parsed()) {
      return SweepCommand(sweep_flags, worker_counts, replicates, sweep_out);
    }
    if (certify->parsed()) {
      return CertifyCommand(spec_text, dim, samples, certify_seed);
    }
    if (bounds->parsed()) return BoundsCommand(bounds_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
