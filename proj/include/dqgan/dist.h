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

#ifndef DQGAN_DIST_H_
#define DQGAN_DIST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dqgan/problems.h"
#include "dqgan/quantize.h"
#include "dqgan/rng.h"
#include "dqgan/vector_ops.h"

namespace dqgan {

// Protocol parameters of one simulated parameter-server run.
struct ProtocolConfig {
  double eta = 0.1;
  std::size_t batch = 1;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  CompressorSpec compressor = CompressorSpec::Identity();
  // All workers draw from worker 0's data and compressor streams, which
  // makes them exact replicas of each other.
  bool shared_batches = false;

  void Validate() const;
};

struct WorkerState {
  std::size_t index = 0;  // 0-based worker id
  ParamVector w;          // local replica of the global iterate
  ParamVector e;          // error accumulator e_t
  ParamVector g_prev;     // last minibatch gradient (eta-free)
  ParamVector w_half;     // w_{t-1/2}
};

struct ServerState {
  ParamVector w;
  std::size_t round = 0;
};

struct MetricsRecord {
  std::size_t t = 0;
  double grad_norm_sq = 0.0;  // ||(1/M) sum_m F(w_{t-1/2}^m; xi_t^m)||^2
  double err_norm_sq = 0.0;   // ||(1/M) sum_m e_t^m||^2
  double dist_to_saddle = 0.0;  // ||w_t - w*||, NaN when w* is unknown
  std::uint64_t bits_up = 0;    // uplink payload bits, all workers

  bool operator==(const MetricsRecord&) const = default;
};

// Per-worker random streams for one round.
Rng DataStream(const ProtocolConfig& config, std::size_t worker,
               std::size_t round);
Rng CompressorStream(const ProtocolConfig& config, std::size_t worker,
                     std::size_t round);

// Initial state: every replica holds w0, e = 0, w_half = w0 and g_prev is
// the gradient of an extra warm-up minibatch (round-0 data stream).
std::vector<WorkerState> InitWorkers(const SaddleProblem& problem,
                                     const ProtocolConfig& config,
                                     const ParamVector& w0);

// w_half <- w_prev - (eta * g_prev + e).
void WorkerHalfStep(WorkerState& worker, std::span<const double> w_prev,
                    double eta);

// Draws the minibatch at w_half, forms p = eta g + e, compresses it and
// keeps the residual: e <- p - Decompress(msg), g_prev <- g.
QuantizedMessage WorkerUpload(WorkerState& worker, const SaddleProblem& problem,
                              const CompressorSpec& compressor, double eta,
                              std::size_t batch, Rng& data_rng,
                              Rng& compressor_rng);

// q_hat = (1/M) sum_m Decompress(msg_m), summed in ascending worker order.
// Advances the server iterate and round counter.
ParamVector ServerAggregate(std::span<const QuantizedMessage> messages,
                            ServerState& server, std::size_t expected_workers);

// w <- w_prev - q_hat on the worker's replica; returns the new iterate.
const ParamVector& WorkerApply(WorkerState& worker,
                               std::span<const double> w_prev,
                               std::span<const double> q_hat);

// Everything one round produced, for invariant checks.
struct RoundTrace {
  std::vector<ParamVector> gradients;  // minibatch F per worker
  std::vector<ParamVector> uploads;    // p per worker
  std::vector<ParamVector> errors_before;
  ParamVector q_hat;
};

// One full round of the protocol over all workers (serial reference order).
MetricsRecord RunRound(std::vector<WorkerState>& workers, ServerState& server,
                       const SaddleProblem& problem,
                       const ProtocolConfig& config,
                       RoundTrace* trace = nullptr);

// Owns the workers and the server for a run.
class Simulation {
 public:
  Simulation(const SaddleProblem& problem, ProtocolConfig config,
             ParamVector w0);

  MetricsRecord Step(RoundTrace* trace = nullptr);

  const ServerState& server() const { return server_; }
  const std::vector<WorkerState>& workers() const { return workers_; }
  const ProtocolConfig& config() const { return config_; }
  // w_t - (1/M) sum_m e_t^m.
  ParamVector ErrorCorrectedIterate() const;
  ParamVector MeanError() const;

 private:
  const SaddleProblem& problem_;
  ProtocolConfig config_;
  std::vector<WorkerState> workers_;
  ServerState server_;
};

// min{1/sqrt(BM), 1/(6 sqrt(2) L)}.
double StepSizeLimit(std::size_t batch, std::size_t workers, double lipschitz);

// 8 eta^2 (1 - delta)(G^2 + sigma^2/B) / delta^2.
double ErrorAccumulatorBound(double eta, double delta, double grad_bound, double sigma,
                     std::size_t batch);

// Right-hand side of the average-gradient convergence bound, term by term.
struct ConvergenceBound {
  double initial = 0.0;        // 4 ||w~0 - w*||^2 / (eta^2 T)
  double noise = 0.0;          // 1728 L^2 sigma^2 / (B^2 M^2)
  double heterogeneity = 0.0;  // 3456 L^2 G^2 (M-1) / (B M^2)
  double compression = 0.0;    // 9216 L^2 (1-delta)(G^2 + sigma^2/B)(M-1) / (delta^2 B M^2)
  double variance = 0.0;       // 48 sigma^2 / (B M)
  bool step_size_admissible = true;

  double total() const {
    return initial + noise + heterogeneity + compression + variance;
  }
};

ConvergenceBound ConvergenceRateBound(double eta, std::size_t batch,
                                   std::size_t workers, double lipschitz,
                                   double grad_bound, double sigma,
                                   double delta, double w0_dist_sq,
                                   std::size_t rounds);

}  // namespace dqgan

#endif  // DQGAN_DIST_H_
