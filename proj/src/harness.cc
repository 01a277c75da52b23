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

#include "dqgan/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "dqgan/optim.h"
#include "json.hpp"

namespace dqgan {

namespace {

constexpr char kMetricsFile[] = "metrics.csv";
constexpr char kSummaryFile[] = "summary.json";

std::string FormatDouble17(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double DistToSaddle(const SaddleProblem& problem, const ParamVector& w) {
  if (const auto star = problem.saddle()) return Norm(Subtract(w, *star));
  return std::numeric_limits<double>::quiet_NaN();
}

// Null for NaN and infinities, which JSON cannot carry.
nlohmann::ordered_json JsonNumber(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string ToString(RunStatus status) {
  return status == RunStatus::kCompleted ? "completed" : "diverged";
}

SummaryStats Summarize(std::span<const MetricsRecord> metrics,
                       std::size_t final_window) {
  SummaryStats s;
  s.rounds = metrics.size();
  if (metrics.empty()) {
    s.final_dist_to_saddle = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (const MetricsRecord& r : metrics) {
    sum += r.grad_norm_sq;
    s.max_err_norm_sq = std::max(s.max_err_norm_sq, r.err_norm_sq);
    s.total_bits_up += r.bits_up;
  }
  s.mean_grad_norm_sq = sum / static_cast<double>(metrics.size());
  const std::size_t window =
      std::clamp<std::size_t>(final_window, 1, metrics.size());
  double tail = 0.0;
  for (std::size_t i = metrics.size() - window; i < metrics.size(); ++i) {
    tail += metrics[i].grad_norm_sq;
  }
  s.final_grad_norm_sq = tail / static_cast<double>(window);
  s.final_dist_to_saddle = metrics.back().dist_to_saddle;
  return s;
}

BoundReport ComputeBounds(const RunConfig& config, const SaddleProblem& problem,
                          double eta, const ParamVector& w0) {
  BoundReport b;
  b.lipschitz = problem.lipschitz();
  b.gradient_bound = problem.gradient_bound();
  b.sigma = std::sqrt(problem.variance_bound());
  b.step_size_limit = StepSizeLimit(config.batch, config.workers, b.lipschitz);
  if (config.optimizer != OptimizerKind::kDqgan) return b;
  b.delta = DeltaLowerBound(config.compressor, problem.dim());
  if (!b.delta) return b;
  b.error_bound = ErrorAccumulatorBound(eta, *b.delta, b.gradient_bound, b.sigma,
                           config.batch);
  if (const auto star = problem.saddle()) {
    // The error accumulators start at zero, so w~0 = w0.
    const double d0 = SquaredNorm(Subtract(w0, *star));
    b.convergence_bound = ConvergenceRateBound(eta, config.batch, config.workers,
                                   b.lipschitz, b.gradient_bound, b.sigma,
                                   *b.delta, d0, config.rounds);
  }
  return b;
}

std::string MetricsCsvHeader() {
  return "t,grad_norm_sq,err_norm_sq,dist_to_saddle,bits_up";
}

std::string FormatMetricsRow(const MetricsRecord& r) {
  std::string out = std::to_string(r.t);
  out += ',';
  out += FormatDouble17(r.grad_norm_sq);
  out += ',';
  out += FormatDouble17(r.err_norm_sq);
  out += ',';
  out += FormatDouble17(r.dist_to_saddle);
  out += ',';
  out += std::to_string(r.bits_up);
  return out;
}

std::vector<MetricsRecord> ParseMetricsCsv(std::string_view text) {
  std::vector<MetricsRecord> out;
  std::size_t start = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != MetricsCsvHeader()) {
        throw InvalidArgument("metrics csv: unexpected header");
      }
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::size_t p = 0;
    while (true) {
      const auto comma = line.find(',', p);
      cols.push_back(line.substr(p, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - p));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    const std::string where = "metrics csv line " + std::to_string(line_no);
    if (cols.size() != 5) throw InvalidArgument(where + ": expected 5 columns");
    auto parse_u64 = [&](std::string_view s) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument(where + ": bad integer");
      }
      return v;
    };
    auto parse_f64 = [&](std::string_view s) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidArgument(where + ": bad number");
      }
      return v;
    };
    MetricsRecord r;
    r.t = parse_u64(cols[0]);
    r.grad_norm_sq = parse_f64(cols[1]);
    r.err_norm_sq = parse_f64(cols[2]);
    r.dist_to_saddle = parse_f64(cols[3]);
    r.bits_up = parse_u64(cols[4]);
    out.push_back(r);
  }
  if (header) throw InvalidArgument("metrics csv: empty file");
  return out;
}

std::vector<MetricsRecord> ReadMetricsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseMetricsCsv(ss.str());
}

std::string SummaryJson(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json cfg = ordered_json::object();
  std::istringstream rendered(RenderConfig(report.config));
  for (std::string line; std::getline(rendered, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = cfg;
  j["status"] = ToString(report.status);
  if (!report.reason.empty()) j["reason"] = report.reason;
  j["metrics_path"] =
      report.metrics_path ? ordered_json(report.metrics_path->string()) : nullptr;
  j["eta_used"] = report.eta_used;

  const SummaryStats& s = report.summary;
  ordered_json summary;
  summary["rounds"] = s.rounds;
  summary["mean_grad_norm_sq"] = JsonNumber(s.mean_grad_norm_sq);
  summary["final_grad_norm_sq"] = JsonNumber(s.final_grad_norm_sq);
  summary["final_dist_to_saddle"] = JsonNumber(s.final_dist_to_saddle);
  summary["max_err_norm_sq"] = JsonNumber(s.max_err_norm_sq);
  summary["total_bits_up"] = s.total_bits_up;
  const BoundReport& b = report.bounds;
  summary["error_bound"] = b.error_bound ? JsonNumber(*b.error_bound) : nullptr;
  if (b.convergence_bound) {
    ordered_json t;
    t["total"] = JsonNumber(b.convergence_bound->total());
    t["initial"] = JsonNumber(b.convergence_bound->initial);
    t["noise"] = JsonNumber(b.convergence_bound->noise);
    t["heterogeneity"] = JsonNumber(b.convergence_bound->heterogeneity);
    t["compression"] = JsonNumber(b.convergence_bound->compression);
    t["variance"] = JsonNumber(b.convergence_bound->variance);
    t["step_size_admissible"] = b.convergence_bound->step_size_admissible;
    summary["convergence_bound"] = t;
  } else {
    summary["convergence_bound"] = nullptr;
  }
  summary["wall_seconds"] = report.wall_seconds;
  j["summary"] = summary;

  ordered_json constants;
  constants["delta"] = b.delta ? ordered_json(*b.delta) : nullptr;
  constants["lipschitz"] = JsonNumber(b.lipschitz);
  constants["gradient_bound"] = JsonNumber(b.gradient_bound);
  constants["sigma"] = JsonNumber(b.sigma);
  constants["step_size_limit"] = JsonNumber(b.step_size_limit);
  j["constants"] = constants;
  j["rounds_outside_box"] = report.rounds_outside_box;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

ExperimentReport RunExperiment(
    const RunConfig& config,
    const std::optional<std::filesystem::path>& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  ValidateConfig(config);
  const std::unique_ptr<SaddleProblem> problem = BuildProblem(config.problem);
  const ParamVector w0 = InitialIterate(config, *problem);

  ExperimentReport report;
  report.config = config;
  const double limit =
      StepSizeLimit(config.batch, config.workers, problem->lipschitz());
  double eta = config.eta;
  if (config.clamp_eta) {
    eta = std::min(eta, limit);
  } else if (eta > limit) {
    report.warnings.push_back("step size " + FormatDouble17(eta) +
                              " exceeds the admissible limit " +
                              FormatDouble17(limit));
  }
  report.eta_used = eta;
  report.bounds = ComputeBounds(config, *problem, eta, w0);
  if (config.optimizer == OptimizerKind::kDqgan && !report.bounds.delta) {
    report.warnings.push_back("compressor " + config.compressor.ToString() +
                              " has no certified delta at dimension " +
                              std::to_string(problem->dim()));
  }

  std::ofstream csv;
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    report.metrics_path = *out_dir / kMetricsFile;
    report.summary_path = *out_dir / kSummaryFile;
    csv.open(*report.metrics_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw InvalidArgument("cannot write " + report.metrics_path->string());
    csv << MetricsCsvHeader() << '\n';
  }

  const ProtocolConfig protocol{eta,         config.batch,
                                config.workers, config.seed,
                                config.compressor, config.shared_batches};
  std::optional<Simulation> sim;
  OptimizerState state;
  ParamVector current = w0;

  auto flush_summary = [&] {
    report.final_w = current;
    report.summary = Summarize(report.metrics, config.final_window);
    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    if (report.rounds_outside_box > 0) {
      report.warnings.push_back("iterate left the domain box in " +
                                std::to_string(report.rounds_outside_box) +
                                " rounds");
    }
    if (out_dir) {
      csv.flush();
      std::ofstream js(*report.summary_path, std::ios::binary | std::ios::trunc);
      js << SummaryJson(report);
    }
  };

  try {
    switch (config.optimizer) {
      case OptimizerKind::kDqgan:
        sim.emplace(*problem, protocol, w0);
        break;
      case OptimizerKind::kOmd: {
        Rng warmup = DataStream(protocol, 0, 0);
        state = WarmStart(*problem, w0, Minibatch{config.batch, &warmup});
        break;
      }
      case OptimizerKind::kGd:
      case OptimizerKind::kExtragradient:
        state.w = w0;
        break;
    }

    for (std::size_t t = 1; t <= config.rounds; ++t) {
      MetricsRecord rec;
      rec.t = t;
      switch (config.optimizer) {
        case OptimizerKind::kDqgan:
          rec = sim->Step();
          current = sim->server().w;
          break;
        case OptimizerKind::kOmd: {
          Rng data = DataStream(protocol, 0, t);
          OmdStep(state, *problem, eta, Minibatch{config.batch, &data});
          rec.grad_norm_sq = SquaredNorm(state.g_prev);
          current = state.w;
          break;
        }
        case OptimizerKind::kGd:
          rec.grad_norm_sq = SquaredNorm(problem->Operator(state.w));
          GdStep(state, *problem, eta);
          current = state.w;
          break;
        case OptimizerKind::kExtragradient:
          ExtragradientStep(state, *problem, eta);
          rec.grad_norm_sq = SquaredNorm(problem->Operator(state.w_half));
          current = state.w;
          break;
      }
      if (!AllFinite(current)) {
        report.status = RunStatus::kDiverged;
        report.reason = "non-finite iterate at round " + std::to_string(t);
        break;
      }
      if (config.optimizer != OptimizerKind::kDqgan) {
        rec.dist_to_saddle = DistToSaddle(*problem, current);
      }
      report.metrics.push_back(rec);
      if (csv.is_open()) csv << FormatMetricsRow(rec) << '\n';
      if (!problem->InBox(current)) ++report.rounds_outside_box;
      const double norm = Norm(current);
      if (norm > config.guard_norm) {
        report.status = RunStatus::kDiverged;
        report.reason = "iterate norm " + FormatDouble17(norm) +
                        " exceeds guard " + FormatDouble17(config.guard_norm) +
                        " at round " + std::to_string(t);
        break;
      }
    }
  } catch (const NumericalError& e) {
    report.status = RunStatus::kDiverged;
    report.reason = e.what();
  } catch (...) {
    flush_summary();
    throw;
  }
  flush_summary();
  return report;
}

double LogLogSlope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("LogLogSlope: need at least two matching points");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidArgument("LogLogSlope: values must be positive");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("LogLogSlope: x values are all equal");
  return sxy / sxx;
}

SweepResult SpeedupSweep(const RunConfig& base,
                         std::span<const std::size_t> worker_counts,
                         std::size_t replicates) {
  if (worker_counts.empty()) throw InvalidArgument("sweep: empty worker list");
  if (replicates == 0) throw InvalidArgument("sweep: replicates must be >= 1");
  SweepResult result;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const std::size_t m : worker_counts) {
    SweepRow row;
    row.workers = m;
    for (std::size_t r = 0; r < replicates; ++r) {
      RunConfig cfg = base;
      cfg.workers = m;
      cfg.seed = base.seed + r;
      cfg.clamp_eta = true;
      const ExperimentReport rep = RunExperiment(cfg);
      if (rep.status != RunStatus::kCompleted) {
        throw NumericalError("sweep: run with M=" + std::to_string(m) +
                             " seed=" + std::to_string(cfg.seed) +
                             " diverged: " + rep.reason);
      }
      row.eta = rep.eta_used;
      const std::size_t half = rep.metrics.size() / 2;
      double sum = 0.0;
      for (std::size_t i = half; i < rep.metrics.size(); ++i) {
        sum += rep.metrics[i].grad_norm_sq;
      }
      row.plateaus.push_back(sum /
                             static_cast<double>(rep.metrics.size() - half));
      if (r == 0) row.bits_up = rep.summary.total_bits_up;
    }
    const double n = static_cast<double>(row.plateaus.size());
    row.mean_plateau =
        std::accumulate(row.plateaus.begin(), row.plateaus.end(), 0.0) / n;
    if (row.plateaus.size() > 1) {
      double ss = 0.0;
      for (double p : row.plateaus) {
        ss += (p - row.mean_plateau) * (p - row.mean_plateau);
      }
      row.stderr_plateau = std::sqrt(ss / (n - 1.0) / n);
    }
    xs.push_back(static_cast<double>(m));
    ys.push_back(row.mean_plateau);
    result.rows.push_back(std::move(row));
  }
  if (xs.size() >= 2) result.slope = LogLogSlope(xs, ys);
  return result;
}

}  // namespace dqgan
