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

#include "dqgan/problems.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace dqgan {

namespace {

// Exact max of ||J w|| over the box needs all 2^dim vertices.
constexpr std::size_t kMaxVertexEnumerationDim = 12;

double MaxOverBoxVertices(const Matrix& j, double box) {
  const std::size_t n = j.cols;
  double best = 0.0;
  ParamVector w(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) w[i] = ((mask >> i) & 1u) ? box : -box;
    double sq = 0.0;
    for (std::size_t r = 0; r < j.rows; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += j(r, c) * w[c];
      sq += s * s;
    }
    best = std::max(best, sq);
  }
  return std::sqrt(best);
}

}  // namespace

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Gaussian(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  const double scale = 1.0 / std::sqrt(static_cast<double>(c));
  for (double& x : m.data) x = scale * rng.Normal();
  return m;
}

double LargestSingularValue(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0.0;
  Eigen::MatrixXd e(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  return svd.singularValues()(0);
}

ParamVector SaddleProblem::Operator(std::span<const double> w) const {
  if (w.size() != dim()) {
    throw InvalidArgument(name() + ": operator input has dimension " +
                          std::to_string(w.size()) + ", expected " +
                          std::to_string(dim()));
  }
  CheckFinite(w, "Operator input");
  return EvaluateOperator(w);
}

ParamVector SaddleProblem::Sample(std::span<const double> w, Rng& rng) const {
  if (w.size() != dim()) throw InvalidArgument(name() + ": dimension mismatch");
  CheckFinite(w, "Sample input");
  return EvaluateSample(w, rng);
}

ParamVector SaddleProblem::Stochastic(std::span<const double> w,
                                      std::size_t batch, Rng& rng) const {
  if (batch == 0) throw InvalidArgument("Stochastic: batch size must be >= 1");
  if (w.size() != dim()) throw InvalidArgument(name() + ": dimension mismatch");
  CheckFinite(w, "Stochastic input");
  if (noiseless()) return EvaluateOperator(w);
  return EvaluateStochastic(w, batch, rng);
}

ParamVector SaddleProblem::EvaluateStochastic(std::span<const double> w,
                                              std::size_t batch,
                                              Rng& rng) const {
  ParamVector acc = EvaluateSample(w, rng);
  for (std::size_t b = 1; b < batch; ++b) AddInPlace(acc, EvaluateSample(w, rng));
  const double inv = static_cast<double>(batch);
  for (double& x : acc) x /= inv;
  return acc;
}

bool SaddleProblem::InBox(std::span<const double> w) const {
  return MaxAbs(w) <= box_radius();
}

LinearGame::LinearGame(Matrix coupling, double mu, double noise, double box)
    : coupling_(std::move(coupling)),
      mu_(mu),
      noise_(noise),
      box_(box),
      dim_theta_(coupling_.rows) {
  if (coupling_.rows == 0 || coupling_.cols == 0) {
    throw InvalidArgument("linear game: coupling matrix must be nonempty");
  }
  if (coupling_.data.size() != coupling_.rows * coupling_.cols) {
    throw InvalidArgument("linear game: coupling matrix storage mismatch");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw InvalidArgument("linear game: noise must be finite and >= 0");
  }
  if (!(box > 0.0)) throw InvalidArgument("linear game: box radius must be > 0");
  CheckFinite(coupling_.data, "coupling matrix");

  const std::size_t dt = coupling_.rows;
  const std::size_t dp = coupling_.cols;
  const std::size_t n = dt + dp;
  jacobian_ = Matrix(n, n);
  for (std::size_t i = 0; i < dt; ++i) jacobian_(i, i) = mu_;
  for (std::size_t i = 0; i < dp; ++i) jacobian_(dt + i, dt + i) = mu_;
  for (std::size_t i = 0; i < dt; ++i) {
    for (std::size_t j = 0; j < dp; ++j) {
      jacobian_(i, dt + j) = coupling_(i, j);
      jacobian_(dt + j, i) = -coupling_(i, j);
    }
  }
  lipschitz_ = LargestSingularValue(jacobian_);
  gradient_bound_ = n <= kMaxVertexEnumerationDim
                        ? MaxOverBoxVertices(jacobian_, box_)
                        : lipschitz_ * box_ * std::sqrt(static_cast<double>(n));
}

double LinearGame::variance_bound() const {
  return noise_ * noise_ * static_cast<double>(dim());
}

std::optional<ParamVector> LinearGame::saddle() const {
  return ParamVector(dim(), 0.0);
}

std::pair<long double, long double> LinearGame::PlayerLosses(
    std::span<const double> w) const {
  const std::size_t dt = coupling_.rows;
  const std::size_t dp = coupling_.cols;
  long double coupling = 0.0L;
  for (std::size_t i = 0; i < dt; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < dp; ++j) {
      row += static_cast<long double>(coupling_(i, j)) * w[dt + j];
    }
    coupling += static_cast<long double>(w[i]) * row;
  }
  long double theta_sq = 0.0L;
  long double phi_sq = 0.0L;
  for (std::size_t i = 0; i < dt; ++i) theta_sq += static_cast<long double>(w[i]) * w[i];
  for (std::size_t j = 0; j < dp; ++j) phi_sq += static_cast<long double>(w[dt + j]) * w[dt + j];
  const long double mu = mu_;
  const long double value = mu / 2 * theta_sq + coupling - mu / 2 * phi_sq;
  return {value, -value};
}

ParamVector LinearGame::EvaluateOperator(std::span<const double> w) const {
  const std::size_t n = dim();
  ParamVector out(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += jacobian_(r, c) * w[c];
    out[r] = s;
  }
  return out;
}

ParamVector LinearGame::EvaluateSample(std::span<const double> w,
                                       Rng& rng) const {
  ParamVector out = EvaluateOperator(w);
  if (noise_ > 0.0) {
    for (double& x : out) x += noise_ * rng.Normal();
  }
  return out;
}

ParamVector LinearGame::EvaluateStochastic(std::span<const double> w,
                                           std::size_t batch, Rng& rng) const {
  // F is exact for every sample; only the additive noise is averaged.
  ParamVector noise_sum(dim(), 0.0);
  for (std::size_t b = 0; b < batch; ++b) {
    for (double& x : noise_sum) x += rng.Normal();
  }
  ParamVector out = EvaluateOperator(w);
  const double scale = noise_ / static_cast<double>(batch);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * noise_sum[i];
  return out;
}

BilinearGame::BilinearGame(Matrix a, double noise, double box)
    : LinearGame(std::move(a), 0.0, noise, box) {}

QuadraticGame::QuadraticGame(double mu, Matrix a, double noise, double box)
    : LinearGame(std::move(a), mu, noise, box) {
  if (!(mu > 0.0)) throw InvalidArgument("quadratic game: mu must be > 0");
}

DiracGan::DiracGan(double noise, double box)
    : BilinearGame(Matrix::Identity(1), noise, box) {}

double GradCheck(const SaddleProblem& problem, std::span<const double> w,
                 double h) {
  if (!(h > 0.0)) throw InvalidArgument("GradCheck: step must be > 0");
  const ParamVector analytic = problem.Operator(w);
  ParamVector probe(w.begin(), w.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const bool generator = i < problem.dim_theta();
    const double orig = probe[i];
    probe[i] = orig + h;
    const auto plus = problem.PlayerLosses(probe);
    probe[i] = orig - h;
    const auto minus = problem.PlayerLosses(probe);
    probe[i] = orig;
    // Difference the exact step actually taken in floating point.
    const long double step = static_cast<long double>(orig + h) -
                             static_cast<long double>(orig - h);
    const long double diff = generator ? plus.first - minus.first
                                       : plus.second - minus.second;
    const double fd = static_cast<double>(diff / step);
    worst = std::max(worst, std::abs(analytic[i] - fd) /
                                (std::abs(analytic[i]) + 1e-12));
  }
  return worst;
}

}  // namespace dqgan
