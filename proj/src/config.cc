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

#include "dqgan/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace dqgan {

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw InvalidArgument("config: invalid value '" + std::string(value) +
                        "' for key '" + std::string(key) + "'");
}

double ParseDouble(std::string_view key, std::string_view v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) BadValue(key, v);
  return x;
}

std::uint64_t ParseU64(std::string_view key, std::string_view v) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) BadValue(key, v);
  return x;
}

bool ParseBool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  BadValue(key, v);
}

std::vector<double> ParseList(std::string_view key, std::string_view v) {
  std::vector<double> out;
  if (Trim(v).empty()) return out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = Trim(v.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start));
    out.push_back(ParseDouble(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string FormatDouble(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string FormatList(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += FormatDouble(xs[i]);
  }
  return out;
}

struct Field {
  const char* key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define DQGAN_DOUBLE_FIELD(name, member)                                       \
  Field {                                                                      \
    name, [](RunConfig& c, std::string_view v) { c.member = ParseDouble(name, v); }, \
        [](const RunConfig& c) { return FormatDouble(c.member); }             \
  }
#define DQGAN_SIZE_FIELD(name, member)                                         \
  Field {                                                                      \
    name, [](RunConfig& c, std::string_view v) { c.member = ParseU64(name, v); }, \
        [](const RunConfig& c) { return std::to_string(c.member); }           \
  }
#define DQGAN_BOOL_FIELD(name, member)                                         \
  Field {                                                                      \
    name, [](RunConfig& c, std::string_view v) { c.member = ParseBool(name, v); }, \
        [](const RunConfig& c) { return std::string(c.member ? "true" : "false"); } \
  }

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"problem.kind",
       [](RunConfig& c, std::string_view v) {
         if (v == "bilinear") c.problem.kind = ProblemKind::kBilinear;
         else if (v == "quadratic") c.problem.kind = ProblemKind::kQuadratic;
         else if (v == "dirac") c.problem.kind = ProblemKind::kDirac;
         else if (v == "toy_wgan") c.problem.kind = ProblemKind::kToyWgan;
         else BadValue("problem.kind", v);
       },
       [](const RunConfig& c) { return ToString(c.problem.kind); }},
      DQGAN_SIZE_FIELD("problem.dim_theta", problem.dim_theta),
      DQGAN_SIZE_FIELD("problem.dim_phi", problem.dim_phi),
      {"problem.matrix",
       [](RunConfig& c, std::string_view v) {
         if (v == "identity") c.problem.matrix = MatrixPreset::kIdentity;
         else if (v == "gaussian") c.problem.matrix = MatrixPreset::kGaussian;
         else if (v == "inline") c.problem.matrix = MatrixPreset::kInline;
         else BadValue("problem.matrix", v);
       },
       [](const RunConfig& c) -> std::string {
         switch (c.problem.matrix) {
           case MatrixPreset::kIdentity: return "identity";
           case MatrixPreset::kGaussian: return "gaussian";
           case MatrixPreset::kInline: return "inline";
         }
         return "?";
       }},
      DQGAN_SIZE_FIELD("problem.matrix_seed", problem.matrix_seed),
      {"problem.matrix_values",
       [](RunConfig& c, std::string_view v) {
         c.problem.matrix_values = ParseList("problem.matrix_values", v);
       },
       [](const RunConfig& c) { return FormatList(c.problem.matrix_values); }},
      DQGAN_DOUBLE_FIELD("problem.mu", problem.mu),
      DQGAN_DOUBLE_FIELD("problem.noise", problem.noise),
      DQGAN_DOUBLE_FIELD("problem.box", problem.box),
      DQGAN_SIZE_FIELD("problem.wgan.hidden", problem.wgan.hidden),
      DQGAN_SIZE_FIELD("problem.wgan.modes", problem.wgan.modes),
      DQGAN_DOUBLE_FIELD("problem.wgan.mode_radius", problem.wgan.mode_radius),
      DQGAN_DOUBLE_FIELD("problem.wgan.mode_std", problem.wgan.mode_std),
      DQGAN_SIZE_FIELD("problem.wgan.data_points", problem.wgan.data_points),
      DQGAN_SIZE_FIELD("problem.wgan.latent_points", problem.wgan.latent_points),
      DQGAN_SIZE_FIELD("problem.wgan.data_seed", problem.wgan.data_seed),
      DQGAN_DOUBLE_FIELD("problem.wgan.box", problem.wgan.box),
      DQGAN_DOUBLE_FIELD("problem.wgan.safety_factor", problem.wgan.safety_factor),
      DQGAN_SIZE_FIELD("problem.wgan.estimate_samples", problem.wgan.estimate_samples),
      {"run.optimizer",
       [](RunConfig& c, std::string_view v) {
         if (v == "dqgan") c.optimizer = OptimizerKind::kDqgan;
         else if (v == "omd") c.optimizer = OptimizerKind::kOmd;
         else if (v == "gd") c.optimizer = OptimizerKind::kGd;
         else if (v == "extragradient") c.optimizer = OptimizerKind::kExtragradient;
         else BadValue("run.optimizer", v);
       },
       [](const RunConfig& c) { return ToString(c.optimizer); }},
      DQGAN_DOUBLE_FIELD("run.eta", eta),
      DQGAN_BOOL_FIELD("run.clamp_eta", clamp_eta),
      DQGAN_SIZE_FIELD("run.rounds", rounds),
      DQGAN_SIZE_FIELD("run.batch", batch),
      DQGAN_SIZE_FIELD("run.workers", workers),
      DQGAN_SIZE_FIELD("run.seed", seed),
      {"run.compressor",
       [](RunConfig& c, std::string_view v) { c.compressor = CompressorSpec::Parse(v); },
       [](const RunConfig& c) { return c.compressor.ToString(); }},
      DQGAN_BOOL_FIELD("run.shared_batches", shared_batches),
      {"run.w0",
       [](RunConfig& c, std::string_view v) { c.w0 = ParseList("run.w0", v); },
       [](const RunConfig& c) { return FormatList(c.w0); }},
      DQGAN_DOUBLE_FIELD("run.w0_scale", w0_scale),
      DQGAN_DOUBLE_FIELD("run.guard_norm", guard_norm),
      DQGAN_SIZE_FIELD("run.final_window", final_window),
  };
  return fields;
}

#undef DQGAN_DOUBLE_FIELD
#undef DQGAN_SIZE_FIELD
#undef DQGAN_BOOL_FIELD

}  // namespace

std::string ToString(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kBilinear: return "bilinear";
    case ProblemKind::kQuadratic: return "quadratic";
    case ProblemKind::kDirac: return "dirac";
    case ProblemKind::kToyWgan: return "toy_wgan";
  }
  return "?";
}

std::string ToString(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kDqgan: return "dqgan";
    case OptimizerKind::kOmd: return "omd";
    case OptimizerKind::kGd: return "gd";
    case OptimizerKind::kExtragradient: return "extragradient";
  }
  return "?";
}

void ApplyOverride(RunConfig& config, std::string_view key,
                   std::string_view value) {
  key = Trim(key);
  value = Trim(value);
  for (const Field& f : Fields()) {
    if (key == f.key) {
      f.set(config, value);
      return;
    }
  }
  throw InvalidArgument("config: unknown key '" + std::string(key) + "'");
}

void ApplyOverride(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("config: expected key=value, got '" +
                          std::string(assignment) + "'");
  }
  ApplyOverride(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

RunConfig ParseConfig(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    if (line.find('=') == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    }
    ApplyOverride(config, line);
  }
  return config;
}

RunConfig LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string RenderConfig(const RunConfig& config) {
  std::string out;
  for (const Field& f : Fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += "\n";
  }
  return out;
}

void ValidateConfig(const RunConfig& config) {
  if (!(config.eta > 0.0) || !std::isfinite(config.eta)) {
    throw InvalidArgument("config: run.eta must be finite and > 0");
  }
  if (config.rounds == 0) throw InvalidArgument("config: run.rounds must be >= 1");
  if (config.batch == 0) throw InvalidArgument("config: run.batch must be >= 1");
  if (config.workers == 0) throw InvalidArgument("config: run.workers must be >= 1");
  if (!(config.guard_norm > 0.0)) throw InvalidArgument("config: run.guard_norm must be > 0");
  if (config.optimizer != OptimizerKind::kDqgan && config.workers != 1) {
    throw InvalidArgument("config: single-machine optimizers need run.workers = 1");
  }
  const ProblemConfig& p = config.problem;
  if (p.kind != ProblemKind::kToyWgan && p.kind != ProblemKind::kDirac) {
    if (p.dim_theta == 0 || p.dim_phi == 0) {
      throw InvalidArgument("config: problem dimensions must be >= 1");
    }
    if (p.matrix == MatrixPreset::kInline &&
        p.matrix_values.size() != p.dim_theta * p.dim_phi) {
      throw InvalidArgument("config: problem.matrix_values needs dim_theta*dim_phi entries");
    }
  }
}

std::unique_ptr<SaddleProblem> BuildProblem(const ProblemConfig& config) {
  auto coupling = [&] {
    switch (config.matrix) {
      case MatrixPreset::kIdentity: {
        Matrix a(config.dim_theta, config.dim_phi);
        for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) a(i, i) = 1.0;
        return a;
      }
      case MatrixPreset::kGaussian: {
        Rng rng(DeriveSeed(config.matrix_seed, 0, 0, StreamKind::kInit));
        return Matrix::Gaussian(config.dim_theta, config.dim_phi, rng);
      }
      case MatrixPreset::kInline: {
        if (config.matrix_values.size() != config.dim_theta * config.dim_phi) {
          throw InvalidArgument("problem: inline matrix has wrong entry count");
        }
        Matrix a(config.dim_theta, config.dim_phi);
        a.data = config.matrix_values;
        return a;
      }
    }
    throw InvalidArgument("problem: unknown matrix preset");
  };
  switch (config.kind) {
    case ProblemKind::kBilinear:
      return std::make_unique<BilinearGame>(coupling(), config.noise, config.box);
    case ProblemKind::kQuadratic:
      return std::make_unique<QuadraticGame>(config.mu, coupling(), config.noise,
                                             config.box);
    case ProblemKind::kDirac:
      return std::make_unique<DiracGan>(config.noise, config.box);
    case ProblemKind::kToyWgan:
      return std::make_unique<ToyWgan>(config.wgan);
  }
  throw InvalidArgument("problem: unknown kind");
}

ParamVector InitialIterate(const RunConfig& config,
                           const SaddleProblem& problem) {
  if (!config.w0.empty()) {
    if (config.w0.size() != problem.dim()) {
      throw InvalidArgument("config: run.w0 has " + std::to_string(config.w0.size()) +
                            " entries, problem dimension is " +
                            std::to_string(problem.dim()));
    }
    return config.w0;
  }
  Rng rng(DeriveSeed(config.seed, 0, 0, StreamKind::kInit));
  if (const auto* wgan = dynamic_cast<const ToyWgan*>(&problem)) {
    return wgan->InitialParameters(rng);
  }
  ParamVector w(problem.dim());
  for (double& x : w) x = config.w0_scale * rng.Normal();
  return w;
}

}  // namespace dqgan
