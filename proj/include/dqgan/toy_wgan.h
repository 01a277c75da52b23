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

#ifndef DQGAN_TOY_WGAN_H_
#define DQGAN_TOY_WGAN_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dqgan/problems.h"

namespace dqgan {

struct ToyWganOptions {
  std::size_t hidden = 8;          // width of both hidden layers, <= 16
  std::size_t modes = 4;           // Gaussians on a circle
  double mode_radius = 2.0;
  double mode_std = 0.2;
  std::size_t data_points = 64;    // fixed real-sample pool
  std::size_t latent_points = 64;  // fixed latent-code pool
  std::uint64_t data_seed = 1;
  double box = 3.0;
  // Declared L, G and variance are sampled estimates times this factor.
  double safety_factor = 2.0;
  std::size_t estimate_samples = 200;

  bool operator==(const ToyWganOptions&) const = default;
};

// WGAN on 2-D data. Generator: z in R^2 -> tanh hidden -> linear R^2.
// Critic: x in R^2 -> tanh hidden -> linear scalar (no output bias; it
// cancels in both losses).
//   L_G = -E_z[D(G(z))],  L_D = -E_x[D(x)] + E_z[D(G(z))]
// The data and latent distributions are the uniform distributions over two
// fixed pools, so Operator() is exact and one sample draws one real point
// and one latent code.
//
// Parameter layout: theta = [Wg1 (H x 2), bg1 (H), Wg2 (2 x H), bg2 (2)],
//                   phi   = [Wd1 (H x 2), bd1 (H), wd2 (H)].
class ToyWgan : public SaddleProblem {
 public:
  explicit ToyWgan(const ToyWganOptions& options = {});

  std::string name() const override { return "toy_wgan"; }
  std::size_t dim() const override { return dim_theta_ + dim_phi_; }
  std::size_t dim_theta() const override { return dim_theta_; }
  std::pair<long double, long double> PlayerLosses(
      std::span<const double> w) const override;
  double lipschitz() const override { return lipschitz_; }
  double gradient_bound() const override { return gradient_bound_; }
  double variance_bound() const override { return variance_bound_; }
  double box_radius() const override { return options_.box; }

  // Weights uniform in +-1/sqrt(fan_in), biases zero.
  ParamVector InitialParameters(Rng& rng) const;

  const ToyWganOptions& options() const { return options_; }
  const std::vector<std::array<double, 2>>& data() const { return data_; }
  const std::vector<std::array<double, 2>>& latents() const { return latents_; }

 protected:
  ParamVector EvaluateOperator(std::span<const double> w) const override;
  ParamVector EvaluateSample(std::span<const double> w, Rng& rng) const override;

 private:
  // Accumulates scale * grad D(G(z)) into the theta and phi parts of out.
  void AccumulateFake(std::span<const double> w, const std::array<double, 2>& z,
                      double theta_scale, double phi_scale,
                      ParamVector& out) const;
  // Accumulates scale * grad_phi D(x) into the phi part of out.
  void AccumulateReal(std::span<const double> w, const std::array<double, 2>& x,
                      double phi_scale, ParamVector& out) const;
  void EstimateConstants();

  ToyWganOptions options_;
  std::size_t dim_theta_;
  std::size_t dim_phi_;
  std::vector<std::array<double, 2>> data_;
  std::vector<std::array<double, 2>> latents_;
  double lipschitz_ = 0.0;
  double gradient_bound_ = 0.0;
  double variance_bound_ = 0.0;
};

}  // namespace dqgan

#endif  // DQGAN_TOY_WGAN_H_
