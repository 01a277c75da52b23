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

#ifndef DQGAN_CONFIG_H_
#define DQGAN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dqgan/problems.h"
#include "dqgan/quantize.h"
#include "dqgan/toy_wgan.h"

namespace dqgan {

enum class ProblemKind { kBilinear, kQuadratic, kDirac, kToyWgan };
enum class MatrixPreset { kIdentity, kGaussian, kInline };
enum class OptimizerKind { kDqgan, kOmd, kGd, kExtragradient };

struct ProblemConfig {
  ProblemKind kind = ProblemKind::kBilinear;
  std::size_t dim_theta = 1;
  std::size_t dim_phi = 1;
  MatrixPreset matrix = MatrixPreset::kIdentity;
  std::uint64_t matrix_seed = 0;
  std::vector<double> matrix_values;  // row-major, dim_theta x dim_phi
  double mu = 1.0;
  double noise = 0.0;  // per-coordinate std of the additive gradient noise
  double box = 10.0;
  ToyWganOptions wgan;

  bool operator==(const ProblemConfig&) const = default;
};

struct RunConfig {
  ProblemConfig problem;
  OptimizerKind optimizer = OptimizerKind::kDqgan;
  double eta = 0.1;
  bool clamp_eta = false;  // eta <- min(eta, step-size limit)
  std::size_t rounds = 100;
  std::size_t batch = 1;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  CompressorSpec compressor = CompressorSpec::Identity();
  bool shared_batches = false;
  std::vector<double> w0;  // empty: random (or network init for toy_wgan)
  double w0_scale = 1.0;
  double guard_norm = 1e6;
  std::size_t final_window = 100;

  bool operator==(const RunConfig&) const = default;
};

// Config documents are flat "key = value" lines; '#' starts a comment.
// Keys use dotted sections ("problem.kind", "run.eta", ...). Lists are
// comma separated. Every key is optional; see RenderConfig for the full set.
RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfigFile(const std::filesystem::path& path);
std::string RenderConfig(const RunConfig& config);
// Sets a single key, same grammar as the file.
void ApplyOverride(RunConfig& config, std::string_view key,
                   std::string_view value);
// "key=value".
void ApplyOverride(RunConfig& config, std::string_view assignment);

void ValidateConfig(const RunConfig& config);

std::unique_ptr<SaddleProblem> BuildProblem(const ProblemConfig& config);
// config.w0 if set, else a seeded draw.
ParamVector InitialIterate(const RunConfig& config,
                           const SaddleProblem& problem);

std::string ToString(ProblemKind kind);
std::string ToString(OptimizerKind kind);

}  // namespace dqgan

#endif  // DQGAN_CONFIG_H_
