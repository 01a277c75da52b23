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

#ifndef DQGAN_PROBLEMS_H_
#define DQGAN_PROBLEMS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqgan/rng.h"
#include "dqgan/vector_ops.h"

namespace dqgan {

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static Matrix Identity(std::size_t n);
  // Entries i.i.d. N(0, 1) / sqrt(cols).
  static Matrix Gaussian(std::size_t r, std::size_t c, Rng& rng);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const Matrix&) const = default;
};

double LargestSingularValue(const Matrix& m);

// Min-max problem seen through its joint operator
//   F(w) = [grad_theta L_G(theta, phi); grad_phi L_D(theta, phi)],
// with w = [theta; phi].
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::size_t dim_theta() const = 0;

  // Exact F(w).
  ParamVector Operator(std::span<const double> w) const;
  // Single-sample estimate F(w; xi), unbiased for Operator(w).
  ParamVector Sample(std::span<const double> w, Rng& rng) const;
  // Minibatch estimate (1/B) sum_b F(w; xi_b). Noiseless problems return
  // Operator(w) exactly and draw nothing.
  ParamVector Stochastic(std::span<const double> w, std::size_t batch,
                         Rng& rng) const;

  // (L_G(w), L_D(w)); the operator is their stacked partial gradients.
  virtual std::pair<long double, long double> PlayerLosses(
      std::span<const double> w) const = 0;

  // Problem constants. gradient_bound() holds over the box
  // ||w||_inf <= box_radius().
  virtual double lipschitz() const = 0;
  virtual double gradient_bound() const = 0;
  // Bound on E||F(w; xi) - F(w)||^2 for a single sample.
  virtual double variance_bound() const = 0;
  virtual double box_radius() const = 0;
  virtual std::optional<ParamVector> saddle() const { return std::nullopt; }

  bool InBox(std::span<const double> w) const;

 protected:
  virtual ParamVector EvaluateOperator(std::span<const double> w) const = 0;
  virtual ParamVector EvaluateSample(std::span<const double> w,
                                     Rng& rng) const = 0;
  // Defaults to averaging EvaluateSample in draw order.
  virtual ParamVector EvaluateStochastic(std::span<const double> w,
                                         std::size_t batch, Rng& rng) const;
  virtual bool noiseless() const { return false; }
};

// F(w) = J w plus optional i.i.d. N(0, noise^2) per coordinate and sample.
class LinearGame : public SaddleProblem {
 public:
  std::size_t dim() const override { return jacobian_.rows; }
  std::size_t dim_theta() const override { return dim_theta_; }
  std::pair<long double, long double> PlayerLosses(
      std::span<const double> w) const override;
  double lipschitz() const override { return lipschitz_; }
  double gradient_bound() const override { return gradient_bound_; }
  double variance_bound() const override;
  double box_radius() const override { return box_; }
  std::optional<ParamVector> saddle() const override;

  const Matrix& jacobian() const { return jacobian_; }
  const Matrix& coupling() const { return coupling_; }
  double noise() const { return noise_; }
  double mu() const { return mu_; }

 protected:
  LinearGame(Matrix coupling, double mu, double noise, double box);

  ParamVector EvaluateOperator(std::span<const double> w) const override;
  ParamVector EvaluateSample(std::span<const double> w, Rng& rng) const override;
  ParamVector EvaluateStochastic(std::span<const double> w, std::size_t batch,
                                 Rng& rng) const override;
  bool noiseless() const override { return noise_ == 0.0; }

 private:
  Matrix coupling_;
  double mu_;
  double noise_;
  double box_;
  std::size_t dim_theta_;
  Matrix jacobian_;
  double lipschitz_;
  double gradient_bound_;
};

// L(theta, phi) = theta^T A phi; F(w) = (A phi, -A^T theta). Rotational:
// <F(w), w> = 0, saddle at 0, L = sigma_max(A).
class BilinearGame : public LinearGame {
 public:
  BilinearGame(Matrix a, double noise = 0.0, double box = 10.0);
  std::string name() const override { return "bilinear"; }
};

// L = (mu/2)||theta||^2 + theta^T A phi - (mu/2)||phi||^2. Strongly monotone
// with modulus mu, saddle at 0.
class QuadraticGame : public LinearGame {
 public:
  QuadraticGame(double mu, Matrix a, double noise = 0.0, double box = 10.0);
  std::string name() const override { return "quadratic"; }
};

// Scalar bilinear game L = theta * phi.
class DiracGan : public BilinearGame {
 public:
  explicit DiracGan(double noise = 0.0, double box = 10.0);
  std::string name() const override { return "dirac"; }
};

// max over coordinates of |analytic - central difference| / (|analytic| +
// 1e-12), differencing L_G along theta and L_D along phi.
double GradCheck(const SaddleProblem& problem, std::span<const double> w,
                 double h);

}  // namespace dqgan

#endif  // DQGAN_PROBLEMS_H_
