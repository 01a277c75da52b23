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

#include "dqgan/optim.h"

#include <cmath>
#include <string>

namespace dqgan {

namespace {

void CheckEta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("step size must be finite and > 0, got " +
                          std::to_string(eta));
  }
}

ParamVector Evaluate(const SaddleProblem& problem, std::span<const double> w,
                     const std::optional<Minibatch>& batch) {
  ParamVector g;
  if (batch) {
    if (batch->rng == nullptr) throw InvalidArgument("minibatch without rng");
    g = problem.Stochastic(w, batch->size, *batch->rng);
  } else {
    g = problem.Operator(w);
  }
  CheckFinite(g, "operator output");
  return g;
}

}  // namespace

StepSchedule ConstantStep(double eta) {
  CheckEta(eta);
  return [eta](std::size_t) { return eta; };
}

OptimizerState WarmStart(const SaddleProblem& problem, ParamVector w0,
                         std::optional<Minibatch> batch) {
  CheckSameDim(w0, ParamVector(problem.dim()), "WarmStart");
  OptimizerState state;
  state.g_prev = Evaluate(problem, w0, batch);
  state.w_half = w0;
  state.w = std::move(w0);
  return state;
}

void GdStep(OptimizerState& state, const SaddleProblem& problem, double eta) {
  CheckEta(eta);
  const ParamVector g = Evaluate(problem, state.w, std::nullopt);
  state.w = Axpy(state.w, -eta, g);
  ++state.step;
}

void ExtragradientStep(OptimizerState& state, const SaddleProblem& problem,
                       double eta) {
  CheckEta(eta);
  const ParamVector g = Evaluate(problem, state.w, std::nullopt);
  state.w_half = Axpy(state.w, -eta, g);
  const ParamVector g_half = Evaluate(problem, state.w_half, std::nullopt);
  state.w = Axpy(state.w, -eta, g_half);
  ++state.step;
}

void OmdStep(OptimizerState& state, const SaddleProblem& problem, double eta,
             std::optional<Minibatch> batch) {
  CheckEta(eta);
  if (state.g_prev.size() != problem.dim()) {
    throw InvalidArgument("OmdStep: state not warm-started");
  }
  state.w_half = Axpy(state.w, -eta, state.g_prev);
  ParamVector g = Evaluate(problem, state.w_half, batch);
  state.w = Axpy(state.w, -eta, g);
  state.g_prev = std::move(g);
  ++state.step;
}

ParamVector OneLineOmdStep(std::span<const double> w_half_prev,
                           std::span<const double> g_prev,
                           std::span<const double> g_prev2, double eta) {
  CheckSameDim(w_half_prev, g_prev, "OneLineOmdStep");
  CheckSameDim(w_half_prev, g_prev2, "OneLineOmdStep");
  ParamVector out(w_half_prev.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = w_half_prev[i] - 2.0 * eta * g_prev[i] + eta * g_prev2[i];
  }
  return out;
}

}  // namespace dqgan
