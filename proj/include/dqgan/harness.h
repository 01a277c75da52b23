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

#ifndef DQGAN_HARNESS_H_
#define DQGAN_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dqgan/config.h"
#include "dqgan/dist.h"

namespace dqgan {

enum class RunStatus { kCompleted, kDiverged };

// Statistics that can be recomputed from the metrics file alone.
struct SummaryStats {
  std::size_t rounds = 0;
  double mean_grad_norm_sq = 0.0;
  // Mean grad_norm_sq over the last final_window rounds.
  double final_grad_norm_sq = 0.0;
  double final_dist_to_saddle = 0.0;
  double max_err_norm_sq = 0.0;
  std::uint64_t total_bits_up = 0;

  bool operator==(const SummaryStats&) const = default;
};

SummaryStats Summarize(std::span<const MetricsRecord> metrics,
                       std::size_t final_window);

// Theoretical quantities for a run; a bound is absent when its hypotheses
// cannot be checked (uncertified delta, unknown saddle point).
struct BoundReport {
  std::optional<double> delta;
  double sigma = 0.0;  // sqrt of the declared single-sample variance
  double lipschitz = 0.0;
  double gradient_bound = 0.0;
  double step_size_limit = 0.0;
  std::optional<double> error_bound;
  std::optional<ConvergenceBound> convergence_bound;
};

BoundReport ComputeBounds(const RunConfig& config, const SaddleProblem& problem,
                          double eta, const ParamVector& w0);

struct ExperimentReport {
  RunConfig config;
  RunStatus status = RunStatus::kCompleted;
  std::string reason;  // why a diverged run stopped
  double eta_used = 0.0;
  std::vector<MetricsRecord> metrics;
  SummaryStats summary;
  BoundReport bounds;
  std::size_t rounds_outside_box = 0;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
  ParamVector final_w;
  std::optional<std::filesystem::path> metrics_path;
  std::optional<std::filesystem::path> summary_path;
};

// Runs config.rounds rounds of the configured optimizer. With out_dir set,
// streams metrics.csv and writes summary.json there (also on divergence).
// Stops early when an iterate is non-finite or its norm exceeds
// config.guard_norm.
ExperimentReport RunExperiment(
    const RunConfig& config,
    const std::optional<std::filesystem::path>& out_dir = std::nullopt);

// metrics.csv: header "t,grad_norm_sq,err_norm_sq,dist_to_saddle,bits_up",
// doubles with 17 significant digits.
std::string MetricsCsvHeader();
std::string FormatMetricsRow(const MetricsRecord& record);
std::vector<MetricsRecord> ParseMetricsCsv(std::string_view text);
std::vector<MetricsRecord> ReadMetricsCsv(const std::filesystem::path& path);

std::string SummaryJson(const ExperimentReport& report);

struct SweepRow {
  std::size_t workers = 0;
  double eta = 0.0;
  std::vector<double> plateaus;  // one per replicate
  double mean_plateau = 0.0;
  double stderr_plateau = 0.0;
  std::uint64_t bits_up = 0;  // total uplink bits of one run
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope = 0.0;  // least-squares slope of log(plateau) vs log(M)
};

// One run per (M, replicate) with seed = base.seed + replicate and the step
// size clamped to the admissible range for (B, M, L). The plateau of a run
// is its mean grad_norm_sq over the second half of the rounds.
SweepResult SpeedupSweep(const RunConfig& base,
                         std::span<const std::size_t> worker_counts,
                         std::size_t replicates);

double LogLogSlope(std::span<const double> x, std::span<const double> y);

std::string ToString(RunStatus status);

}  // namespace dqgan

#endif  // DQGAN_HARNESS_H_
