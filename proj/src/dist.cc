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

#include "dqgan/dist.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dqgan {

void ProtocolConfig::Validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("protocol: eta must be finite and > 0");
  }
  if (batch == 0) throw InvalidArgument("protocol: batch must be >= 1");
  if (workers == 0) throw InvalidArgument("protocol: workers must be >= 1");
}

Rng DataStream(const ProtocolConfig& config, std::size_t worker,
               std::size_t round) {
  const std::size_t source = config.shared_batches ? 0 : worker;
  return Rng(DeriveSeed(config.seed, source, round, StreamKind::kData));
}

Rng CompressorStream(const ProtocolConfig& config, std::size_t worker,
                     std::size_t round) {
  const std::size_t source = config.shared_batches ? 0 : worker;
  return Rng(DeriveSeed(config.seed, source, round, StreamKind::kCompressor));
}

std::vector<WorkerState> InitWorkers(const SaddleProblem& problem,
                                     const ProtocolConfig& config,
                                     const ParamVector& w0) {
  config.Validate();
  config.compressor.Validate(problem.dim());
  if (w0.size() != problem.dim()) {
    throw InvalidArgument("InitWorkers: w0 has dimension " +
                          std::to_string(w0.size()) + ", problem has " +
                          std::to_string(problem.dim()));
  }
  CheckFinite(w0, "w0");
  std::vector<WorkerState> workers(config.workers);
  for (std::size_t m = 0; m < workers.size(); ++m) {
    WorkerState& wk = workers[m];
    wk.index = m;
    wk.w = w0;
    wk.w_half = w0;
    wk.e.assign(w0.size(), 0.0);
    Rng warmup = DataStream(config, m, 0);
    wk.g_prev = problem.Stochastic(w0, config.batch, warmup);
    CheckFinite(wk.g_prev, "warm-up gradient");
  }
  return workers;
}

void WorkerHalfStep(WorkerState& worker, std::span<const double> w_prev,
                    double eta) {
  CheckSameDim(w_prev, worker.g_prev, "WorkerHalfStep");
  CheckSameDim(w_prev, worker.e, "WorkerHalfStep");
  ParamVector half(w_prev.size());
  for (std::size_t i = 0; i < half.size(); ++i) {
    half[i] = w_prev[i] - (eta * worker.g_prev[i] + worker.e[i]);
  }
  CheckFinite(half, "half iterate");
  worker.w_half = std::move(half);
}

QuantizedMessage WorkerUpload(WorkerState& worker, const SaddleProblem& problem,
                              const CompressorSpec& compressor, double eta,
                              std::size_t batch, Rng& data_rng,
                              Rng& compressor_rng) {
  compressor.Validate(problem.dim());
  CheckSameDim(worker.w_half, worker.e, "WorkerUpload");
  ParamVector g = problem.Stochastic(worker.w_half, batch, data_rng);
  CheckFinite(g, "minibatch gradient");
  ParamVector p(g.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = eta * g[i] + worker.e[i];
  CheckFinite(p, "upload");
  QuantizedMessage msg = Compress(p, compressor, compressor_rng);
  const ParamVector p_hat = Decompress(msg);
  worker.e = Subtract(p, p_hat);
  worker.g_prev = std::move(g);
  return msg;
}

ParamVector ServerAggregate(std::span<const QuantizedMessage> messages,
                            ServerState& server, std::size_t expected_workers) {
  if (messages.size() != expected_workers) {
    throw InvalidArgument("ServerAggregate: expected " +
                          std::to_string(expected_workers) +
                          " messages, got " + std::to_string(messages.size()));
  }
  if (messages.empty()) throw InvalidArgument("ServerAggregate: no messages");
  ParamVector sum = Decompress(messages[0]);
  for (std::size_t m = 1; m < messages.size(); ++m) {
    const ParamVector part = Decompress(messages[m]);
    if (part.size() != sum.size()) {
      throw InvalidArgument("ServerAggregate: message dimension mismatch");
    }
    AddInPlace(sum, part);
  }
  const double count = static_cast<double>(messages.size());
  for (double& x : sum) x /= count;
  if (server.w.size() == sum.size()) {
    server.w = Subtract(server.w, sum);
  } else if (!server.w.empty()) {
    throw InvalidArgument("ServerAggregate: server iterate dimension mismatch");
  }
  ++server.round;
  return sum;
}

const ParamVector& WorkerApply(WorkerState& worker,
                               std::span<const double> w_prev,
                               std::span<const double> q_hat) {
  worker.w = Subtract(w_prev, q_hat);
  return worker.w;
}

MetricsRecord RunRound(std::vector<WorkerState>& workers, ServerState& server,
                       const SaddleProblem& problem,
                       const ProtocolConfig& config, RoundTrace* trace) {
  if (workers.size() != config.workers) {
    throw InvalidArgument("RunRound: worker count does not match config");
  }
  const std::size_t round = server.round + 1;
  if (trace != nullptr) *trace = RoundTrace{};

  std::vector<QuantizedMessage> messages;
  messages.reserve(workers.size());
  for (WorkerState& wk : workers) {
    WorkerHalfStep(wk, wk.w, config.eta);
    Rng data_rng = DataStream(config, wk.index, round);
    Rng comp_rng = CompressorStream(config, wk.index, round);
    if (trace != nullptr) trace->errors_before.push_back(wk.e);
    messages.push_back(WorkerUpload(wk, problem, config.compressor, config.eta,
                                    config.batch, data_rng, comp_rng));
    if (trace != nullptr) {
      trace->gradients.push_back(wk.g_prev);
      trace->uploads.push_back(Axpy(trace->errors_before.back(), config.eta, wk.g_prev));
    }
  }

  const ParamVector q_hat = ServerAggregate(messages, server, workers.size());
  for (WorkerState& wk : workers) {
    const ParamVector w_prev = wk.w;
    WorkerApply(wk, w_prev, q_hat);
    if (wk.w != server.w) {
      throw std::logic_error("RunRound: worker replica diverged from server");
    }
  }
  CheckFinite(server.w, "iterate");

  MetricsRecord rec;
  rec.t = round;
  std::vector<ParamVector> grads;
  std::vector<ParamVector> errs;
  grads.reserve(workers.size());
  errs.reserve(workers.size());
  std::uint64_t bits = 0;
  for (std::size_t m = 0; m < workers.size(); ++m) {
    grads.push_back(workers[m].g_prev);
    errs.push_back(workers[m].e);
    bits += Inspect(messages[m]).payload_bits;
  }
  rec.grad_norm_sq = SquaredNorm(Mean(grads));
  rec.err_norm_sq = SquaredNorm(Mean(errs));
  rec.bits_up = bits;
  if (const auto star = problem.saddle()) {
    rec.dist_to_saddle = Norm(Subtract(server.w, *star));
  } else {
    rec.dist_to_saddle = std::numeric_limits<double>::quiet_NaN();
  }
  if (trace != nullptr) trace->q_hat = q_hat;
  return rec;
}

Simulation::Simulation(const SaddleProblem& problem, ProtocolConfig config,
                       ParamVector w0)
    : problem_(problem), config_(std::move(config)) {
  workers_ = InitWorkers(problem_, config_, w0);
  server_.w = std::move(w0);
}

MetricsRecord Simulation::Step(RoundTrace* trace) {
  return RunRound(workers_, server_, problem_, config_, trace);
}

ParamVector Simulation::MeanError() const {
  std::vector<ParamVector> errs;
  for (const auto& wk : workers_) errs.push_back(wk.e);
  return Mean(errs);
}

ParamVector Simulation::ErrorCorrectedIterate() const {
  return Subtract(server_.w, MeanError());
}

double StepSizeLimit(std::size_t batch, std::size_t workers, double lipschitz) {
  const double a = 1.0 / std::sqrt(static_cast<double>(batch * workers));
  if (!(lipschitz > 0.0)) return a;
  return std::min(a, 1.0 / (6.0 * std::sqrt(2.0) * lipschitz));
}

double ErrorAccumulatorBound(double eta, double delta, double grad_bound, double sigma,
                     std::size_t batch) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw InvalidArgument("ErrorAccumulatorBound: delta must be in (0, 1]");
  }
  if (!(eta > 0.0)) throw InvalidArgument("ErrorAccumulatorBound: eta must be > 0");
  if (batch == 0) throw InvalidArgument("ErrorAccumulatorBound: batch must be >= 1");
  const double b = static_cast<double>(batch);
  return 8.0 * eta * eta * (1.0 - delta) *
         (grad_bound * grad_bound + sigma * sigma / b) / (delta * delta);
}

ConvergenceBound ConvergenceRateBound(double eta, std::size_t batch,
                                   std::size_t workers, double lipschitz,
                                   double grad_bound, double sigma,
                                   double delta, double w0_dist_sq,
                                   std::size_t rounds) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw InvalidArgument("ConvergenceRateBound: delta must be in (0, 1]");
  }
  if (rounds == 0) throw InvalidArgument("ConvergenceRateBound: T must be >= 1");
  if (!(eta > 0.0)) throw InvalidArgument("ConvergenceRateBound: eta must be > 0");
  if (batch == 0 || workers == 0) {
    throw InvalidArgument("ConvergenceRateBound: B and M must be >= 1");
  }
  const double b = static_cast<double>(batch);
  const double m = static_cast<double>(workers);
  const double l2 = lipschitz * lipschitz;
  const double g2 = grad_bound * grad_bound;
  const double s2 = sigma * sigma;
  ConvergenceBound out;
  out.initial = 4.0 * w0_dist_sq / (eta * eta * static_cast<double>(rounds));
  out.noise = 1728.0 * l2 * s2 / (b * b * m * m);
  out.heterogeneity = 3456.0 * l2 * g2 * (m - 1.0) / (b * m * m);
  out.compression = 9216.0 * l2 * (1.0 - delta) * (g2 + s2 / b) * (m - 1.0) /
                    (delta * delta * b * m * m);
  out.variance = 48.0 * s2 / (b * m);
  out.step_size_admissible = eta <= StepSizeLimit(batch, workers, lipschitz);
  return out;
}

}  // namespace dqgan
