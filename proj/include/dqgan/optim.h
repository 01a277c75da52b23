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

#ifndef DQGAN_OPTIM_H_
#define DQGAN_OPTIM_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "dqgan/problems.h"
#include "dqgan/rng.h"
#include "dqgan/vector_ops.h"

namespace dqgan {

// Single-machine saddle-point iterations, unconstrained (no projection).
struct OptimizerState {
  ParamVector w;       // w_t
  ParamVector g_prev;  // F(w_{t-1/2}), exact or minibatch
  ParamVector w_half;  // w_{t-1/2} before a step, w_{t+1/2} after it
  std::size_t step = 0;
};

// Step size as a function of the iteration counter.
using StepSchedule = std::function<double(std::size_t)>;
StepSchedule ConstantStep(double eta);

// Minibatch sampling for the stochastic variant of OMD.
struct Minibatch {
  std::size_t size = 1;
  Rng* rng = nullptr;
};

// w_{-1/2} = w0 and g_prev = F(w0), or a minibatch estimate drawn from a
// dedicated warm-up batch.
OptimizerState WarmStart(const SaddleProblem& problem, ParamVector w0,
                         std::optional<Minibatch> batch = std::nullopt);

// w <- w - eta F(w).
void GdStep(OptimizerState& state, const SaddleProblem& problem, double eta);

// w_half <- w - eta F(w);  w <- w - eta F(w_half).
void ExtragradientStep(OptimizerState& state, const SaddleProblem& problem,
                       double eta);

// Optimistic mirror descent (past-iterate extragradient):
//   w_half <- w - eta g_prev;  g <- F(w_half);  w <- w - eta g;  g_prev <- g.
void OmdStep(OptimizerState& state, const SaddleProblem& problem, double eta,
             std::optional<Minibatch> batch = std::nullopt);

// One-line form on half iterates:
//   w_{t+1/2} = w_{t-1/2} - 2 eta F(w_{t-1/2}) + eta F(w_{t-3/2}).
ParamVector OneLineOmdStep(std::span<const double> w_half_prev,
                           std::span<const double> g_prev,
                           std::span<const double> g_prev2, double eta);

}  // namespace dqgan

#endif  // DQGAN_OPTIM_H_
