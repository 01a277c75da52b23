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

#include "dqgan/toy_wgan.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dqgan {

namespace {

struct Layout {
  std::size_t h;
  // generator
  std::size_t wg1, bg1, wg2, bg2;
  // critic
  std::size_t wd1, bd1, wd2;

  explicit Layout(std::size_t hidden) : h(hidden) {
    wg1 = 0;
    bg1 = wg1 + 2 * h;
    wg2 = bg1 + h;
    bg2 = wg2 + 2 * h;
    wd1 = bg2 + 2;
    bd1 = wd1 + 2 * h;
    wd2 = bd1 + h;
  }
  std::size_t theta_size() const { return wd1; }
  std::size_t phi_size() const { return 4 * h; }
};

template <typename T>
std::array<T, 2> Generate(std::span<const double> w, const Layout& lay,
                          const std::array<double, 2>& z) {
  std::array<T, 2> x = {T(w[lay.bg2]), T(w[lay.bg2 + 1])};
  for (std::size_t j = 0; j < lay.h; ++j) {
    const T pre = T(w[lay.wg1 + 2 * j]) * T(z[0]) +
                  T(w[lay.wg1 + 2 * j + 1]) * T(z[1]) + T(w[lay.bg1 + j]);
    const T hj = std::tanh(pre);
    x[0] += T(w[lay.wg2 + j]) * hj;
    x[1] += T(w[lay.wg2 + lay.h + j]) * hj;
  }
  return x;
}

template <typename T>
T Critic(std::span<const double> w, const Layout& lay, const std::array<T, 2>& x) {
  T out = 0;
  for (std::size_t j = 0; j < lay.h; ++j) {
    const T pre = T(w[lay.wd1 + 2 * j]) * x[0] +
                  T(w[lay.wd1 + 2 * j + 1]) * x[1] + T(w[lay.bd1 + j]);
    out += T(w[lay.wd2 + j]) * std::tanh(pre);
  }
  return out;
}

}  // namespace

ToyWgan::ToyWgan(const ToyWganOptions& options) : options_(options) {
  if (options_.hidden == 0 || options_.hidden > 16) {
    throw InvalidArgument("toy_wgan: hidden width must be in [1, 16]");
  }
  if (options_.modes == 0 || options_.data_points == 0 ||
      options_.latent_points == 0) {
    throw InvalidArgument("toy_wgan: modes and pool sizes must be >= 1");
  }
  if (!(options_.box > 0.0) || !(options_.safety_factor >= 1.0)) {
    throw InvalidArgument("toy_wgan: box must be > 0 and safety factor >= 1");
  }
  const Layout lay(options_.hidden);
  dim_theta_ = lay.theta_size();
  dim_phi_ = lay.phi_size();

  Rng rng(DeriveSeed(options_.data_seed, 0, 0, StreamKind::kData));
  data_.resize(options_.data_points);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi *
                         static_cast<double>(i % options_.modes) /
                         static_cast<double>(options_.modes);
    data_[i][0] = options_.mode_radius * std::cos(angle) + options_.mode_std * rng.Normal();
    data_[i][1] = options_.mode_radius * std::sin(angle) + options_.mode_std * rng.Normal();
  }
  latents_.resize(options_.latent_points);
  for (auto& z : latents_) {
    z[0] = rng.Normal();
    z[1] = rng.Normal();
  }
  EstimateConstants();
}

ParamVector ToyWgan::InitialParameters(Rng& rng) const {
  const Layout lay(options_.hidden);
  ParamVector w(dim(), 0.0);
  auto fill = [&](std::size_t offset, std::size_t count, double fan_in) {
    const double bound = 1.0 / std::sqrt(fan_in);
    for (std::size_t i = 0; i < count; ++i) {
      w[offset + i] = bound * (2.0 * rng.Uniform() - 1.0);
    }
  };
  const double h = static_cast<double>(lay.h);
  fill(lay.wg1, 2 * lay.h, 2.0);
  fill(lay.wg2, 2 * lay.h, h);
  fill(lay.wd1, 2 * lay.h, 2.0);
  fill(lay.wd2, lay.h, h);
  return w;
}

std::pair<long double, long double> ToyWgan::PlayerLosses(
    std::span<const double> w) const {
  using T = long double;
  const Layout lay(options_.hidden);
  T fake = 0;
  for (const auto& z : latents_) fake += Critic<T>(w, lay, Generate<T>(w, lay, z));
  fake /= static_cast<T>(latents_.size());
  T real = 0;
  for (const auto& x : data_) real += Critic<T>(w, lay, std::array<T, 2>{x[0], x[1]});
  real /= static_cast<T>(data_.size());
  return {-fake, -real + fake};
}

void ToyWgan::AccumulateReal(std::span<const double> w,
                             const std::array<double, 2>& x, double phi_scale,
                             ParamVector& out) const {
  const Layout lay(options_.hidden);
  for (std::size_t j = 0; j < lay.h; ++j) {
    const double pre = w[lay.wd1 + 2 * j] * x[0] + w[lay.wd1 + 2 * j + 1] * x[1] +
                       w[lay.bd1 + j];
    const double u = std::tanh(pre);
    const double delta = w[lay.wd2 + j] * (1.0 - u * u);
    out[lay.wd2 + j] += phi_scale * u;
    out[lay.bd1 + j] += phi_scale * delta;
    out[lay.wd1 + 2 * j] += phi_scale * delta * x[0];
    out[lay.wd1 + 2 * j + 1] += phi_scale * delta * x[1];
  }
}

void ToyWgan::AccumulateFake(std::span<const double> w,
                             const std::array<double, 2>& z, double theta_scale,
                             double phi_scale, ParamVector& out) const {
  const Layout lay(options_.hidden);
  const std::size_t h = lay.h;
  double hidden[16];
  std::array<double, 2> x = {w[lay.bg2], w[lay.bg2 + 1]};
  for (std::size_t j = 0; j < h; ++j) {
    const double pre = w[lay.wg1 + 2 * j] * z[0] + w[lay.wg1 + 2 * j + 1] * z[1] +
                       w[lay.bg1 + j];
    hidden[j] = std::tanh(pre);
    x[0] += w[lay.wg2 + j] * hidden[j];
    x[1] += w[lay.wg2 + h + j] * hidden[j];
  }

  // Critic at the generated point: parameter gradient plus dD/dx.
  double dx[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < h; ++j) {
    const double pre = w[lay.wd1 + 2 * j] * x[0] + w[lay.wd1 + 2 * j + 1] * x[1] +
                       w[lay.bd1 + j];
    const double u = std::tanh(pre);
    const double delta = w[lay.wd2 + j] * (1.0 - u * u);
    out[lay.wd2 + j] += phi_scale * u;
    out[lay.bd1 + j] += phi_scale * delta;
    out[lay.wd1 + 2 * j] += phi_scale * delta * x[0];
    out[lay.wd1 + 2 * j + 1] += phi_scale * delta * x[1];
    dx[0] += delta * w[lay.wd1 + 2 * j];
    dx[1] += delta * w[lay.wd1 + 2 * j + 1];
  }

  // Back through the generator.
  out[lay.bg2] += theta_scale * dx[0];
  out[lay.bg2 + 1] += theta_scale * dx[1];
  for (std::size_t j = 0; j < h; ++j) {
    out[lay.wg2 + j] += theta_scale * dx[0] * hidden[j];
    out[lay.wg2 + h + j] += theta_scale * dx[1] * hidden[j];
    const double dh = dx[0] * w[lay.wg2 + j] + dx[1] * w[lay.wg2 + h + j];
    const double gamma = dh * (1.0 - hidden[j] * hidden[j]);
    out[lay.bg1 + j] += theta_scale * gamma;
    out[lay.wg1 + 2 * j] += theta_scale * gamma * z[0];
    out[lay.wg1 + 2 * j + 1] += theta_scale * gamma * z[1];
  }
}

ParamVector ToyWgan::EvaluateOperator(std::span<const double> w) const {
  ParamVector out(dim(), 0.0);
  const double inv_z = 1.0 / static_cast<double>(latents_.size());
  const double inv_x = 1.0 / static_cast<double>(data_.size());
  // grad_theta L_G = -mean grad_theta D(G(z));
  // grad_phi L_D  = -mean grad_phi D(x) + mean grad_phi D(G(z)).
  for (const auto& z : latents_) AccumulateFake(w, z, -inv_z, inv_z, out);
  for (const auto& x : data_) AccumulateReal(w, x, -inv_x, out);
  return out;
}

ParamVector ToyWgan::EvaluateSample(std::span<const double> w, Rng& rng) const {
  const auto& x = data_[rng.Index(data_.size())];
  const auto& z = latents_[rng.Index(latents_.size())];
  ParamVector out(dim(), 0.0);
  AccumulateFake(w, z, -1.0, 1.0, out);
  AccumulateReal(w, x, -1.0, out);
  return out;
}

void ToyWgan::EstimateConstants() {
  Rng rng(DeriveSeed(options_.data_seed, 0, 0, StreamKind::kAux));
  const std::size_t n = dim();
  auto random_point = [&] {
    ParamVector w(n);
    for (double& x : w) x = options_.box * (2.0 * rng.Uniform() - 1.0);
    return w;
  };

  double lip = 0.0;
  double grad = 0.0;
  double var = 0.0;
  for (std::size_t s = 0; s < options_.estimate_samples; ++s) {
    const ParamVector w1 = random_point();
    const ParamVector f1 = EvaluateOperator(w1);
    grad = std::max(grad, Norm(f1));

    // Far pair.
    const ParamVector w2 = random_point();
    lip = std::max(lip, Norm(Subtract(EvaluateOperator(w2), f1)) /
                            Norm(Subtract(w2, w1)));
    // Near pair, which probes the local Jacobian.
    ParamVector dir(n);
    for (double& x : dir) x = rng.Normal();
    ScaleInPlace(dir, 1e-4 / Norm(dir));
    const ParamVector w3 = Axpy(w1, 1.0, dir);
    lip = std::max(lip, Norm(Subtract(EvaluateOperator(w3), f1)) / Norm(dir));

    // Exact single-sample variance: the real and fake parts are independent.
    if (s % 10 == 0) {
      auto pool_variance = [&](auto&& per_item, std::size_t count) {
        std::vector<ParamVector> items;
        items.reserve(count);
        for (std::size_t i = 0; i < count; ++i) items.push_back(per_item(i));
        const ParamVector mean = Mean(items);
        double v = 0.0;
        for (const auto& it : items) v += SquaredNorm(Subtract(it, mean));
        return v / static_cast<double>(count);
      };
      const double fake_var = pool_variance(
          [&](std::size_t i) {
            ParamVector g(n, 0.0);
            AccumulateFake(w1, latents_[i], -1.0, 1.0, g);
            return g;
          },
          latents_.size());
      const double real_var = pool_variance(
          [&](std::size_t i) {
            ParamVector g(n, 0.0);
            AccumulateReal(w1, data_[i], -1.0, g);
            return g;
          },
          data_.size());
      var = std::max(var, fake_var + real_var);
    }
  }
  lipschitz_ = options_.safety_factor * lip;
  gradient_bound_ = options_.safety_factor * grad;
  variance_bound_ = options_.safety_factor * var;
}

}  // namespace dqgan
