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
#include <vector>

#include "dqgan/toy_wgan.h"
#include "gtest/gtest.h"

namespace dqgan {
namespace {

ParamVector RandomVector(std::size_t d, Rng& rng, double scale = 1.0) {
  ParamVector v(d);
  for (double& x : v) x = scale * rng.Normal();
  return v;
}

ParamVector RandomInBox(std::size_t d, double box, Rng& rng) {
  ParamVector v(d);
  for (double& x : v) x = box * (2.0 * rng.Uniform() - 1.0);
  return v;
}

// sigma_max by power iteration on A^T A, as an independent check of the SVD.
double PowerIterationNorm(const Matrix& a) {
  ParamVector x(a.cols, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    ParamVector ax(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t j = 0; j < a.cols; ++j) ax[i] += a(i, j) * x[j];
    }
    ParamVector atax(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t j = 0; j < a.cols; ++j) atax[j] += a(i, j) * ax[i];
    }
    lambda = Norm(atax);
    for (std::size_t j = 0; j < a.cols; ++j) x[j] = atax[j] / lambda;
  }
  return std::sqrt(lambda);
}

TEST(BilinearGameTest, OperatorExample) {
  BilinearGame game(Matrix::Identity(1));
  EXPECT_EQ(game.Operator(ParamVector{1, 0}), (ParamVector{0, -1}));
  EXPECT_EQ(game.Operator(ParamVector{0, 0}), (ParamVector{0, 0}));
  EXPECT_EQ(game.dim(), 2u);
  EXPECT_EQ(game.dim_theta(), 1u);
  EXPECT_DOUBLE_EQ(game.lipschitz(), 1.0);
  EXPECT_EQ(*game.saddle(), (ParamVector{0, 0}));
}

TEST(BilinearGameTest, RotationalField) {
  Rng rng(1);
  Matrix a = Matrix::Gaussian(3, 4, rng);
  BilinearGame game(a);
  for (int i = 0; i < 1000; ++i) {
    const ParamVector w = RandomVector(7, rng, 3.0);
    ASSERT_NEAR(Dot(game.Operator(w), w), 0.0, 1e-12 * (1.0 + SquaredNorm(w)));
  }
}

TEST(QuadraticGameTest, OperatorExample) {
  QuadraticGame game(1.0, Matrix(1, 1));
  EXPECT_EQ(game.Operator(ParamVector{2, 3}), (ParamVector{2, 3}));
}

TEST(QuadraticGameTest, StronglyMonotone) {
  Rng rng(2);
  const double mu = 0.3;
  QuadraticGame game(mu, Matrix::Gaussian(2, 3, rng));
  for (int i = 0; i < 1000; ++i) {
    const ParamVector w1 = RandomVector(5, rng);
    const ParamVector w2 = RandomVector(5, rng);
    const ParamVector dw = Subtract(w1, w2);
    const double lhs = Dot(Subtract(game.Operator(w1), game.Operator(w2)), dw);
    ASSERT_GE(lhs, mu * SquaredNorm(dw) * (1.0 - 1e-12));
    ASSERT_NEAR(Dot(game.Operator(w1), w1), mu * SquaredNorm(w1),
                1e-12 * (1.0 + SquaredNorm(w1)));
  }
}

TEST(LinearGameTest, DeclaredConstantsHold) {
  Rng rng(3);
  const Matrix a = Matrix::Gaussian(3, 2, rng);
  EXPECT_NEAR(LargestSingularValue(a), PowerIterationNorm(a), 1e-10);

  BilinearGame bilinear(a, 0.0, 2.0);
  QuadraticGame quadratic(0.5, a, 0.0, 2.0);
  EXPECT_NEAR(bilinear.lipschitz(), LargestSingularValue(a), 1e-12);
  const double s = LargestSingularValue(a);
  EXPECT_NEAR(quadratic.lipschitz(), std::sqrt(0.25 + s * s), 1e-12);

  for (const LinearGame* game :
       std::vector<const LinearGame*>{&bilinear, &quadratic}) {
    for (int i = 0; i < 10000; ++i) {
      const ParamVector w1 = RandomVector(5, rng);
      const ParamVector w2 = RandomVector(5, rng);
      const double lhs = Norm(Subtract(game->Operator(w1), game->Operator(w2)));
      ASSERT_LE(lhs, game->lipschitz() * Norm(Subtract(w1, w2)) * (1.0 + 1e-12));
      const ParamVector b = RandomInBox(5, 2.0, rng);
      ASSERT_LE(Norm(game->Operator(b)), game->gradient_bound() * (1.0 + 1e-12));
    }
    // The bound is attained at a vertex of the box.
    ParamVector best(5);
    double best_norm = 0.0;
    for (unsigned mask = 0; mask < 32; ++mask) {
      for (std::size_t i = 0; i < 5; ++i) best[i] = (mask >> i) & 1u ? 2.0 : -2.0;
      best_norm = std::max(best_norm, Norm(game->Operator(best)));
    }
    EXPECT_NEAR(game->gradient_bound(), best_norm, 1e-12);
  }
}

TEST(LinearGameTest, NoiselessStochasticIsExact) {
  Rng rng(4);
  QuadraticGame game(1.0, Matrix::Gaussian(2, 2, rng));
  const ParamVector w = RandomVector(4, rng);
  Rng draw(5);
  EXPECT_EQ(game.Stochastic(w, 3, draw), game.Operator(w));
  // No draws were consumed.
  Rng fresh(5);
  EXPECT_EQ(draw.Next(), fresh.Next());
}

TEST(LinearGameTest, NoisyOracleMoments) {
  Rng rng(6);
  const double sigma = 0.5;
  BilinearGame game(Matrix::Gaussian(1, 2, rng), sigma);
  const ParamVector w = {0.3, -1.0, 2.0};
  const ParamVector f = game.Operator(w);
  const int n = 100000;
  ParamVector mean(3, 0.0);
  double sq_sum = 0.0;
  double sq_sq_sum = 0.0;
  Rng draw(7);
  for (int i = 0; i < n; ++i) {
    const ParamVector g = game.Sample(w, draw);
    for (std::size_t j = 0; j < 3; ++j) mean[j] += g[j] / n;
    const double e = SquaredNorm(Subtract(g, f));
    sq_sum += e;
    sq_sq_sum += e * e;
  }
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(mean[j], f[j], 5.0 * sigma / std::sqrt(n));
  }
  const double var = sq_sum / n;
  const double se = std::sqrt((sq_sq_sum / n - var * var) / n);
  EXPECT_NEAR(var, sigma * sigma * 3.0, 5.0 * se);
  EXPECT_DOUBLE_EQ(game.variance_bound(), sigma * sigma * 3.0);

  // A minibatch of B has variance sigma^2 dim / B.
  double batch_sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    batch_sum += SquaredNorm(Subtract(game.Stochastic(w, 4, draw), f));
  }
  EXPECT_NEAR(batch_sum / 20000, sigma * sigma * 3.0 / 4.0, 0.02);
}

TEST(SaddleProblemTest, RejectsBadInput) {
  BilinearGame game(Matrix::Identity(2));
  Rng rng(1);
  EXPECT_THROW(game.Operator(ParamVector{1, 2, 3}), InvalidArgument);
  EXPECT_THROW(game.Operator(ParamVector{1, 2, NAN, 0}), NumericalError);
  EXPECT_THROW(game.Stochastic(ParamVector(4, 0.0), 0, rng), InvalidArgument);
  EXPECT_THROW(QuadraticGame(0.0, Matrix::Identity(1)), InvalidArgument);
  EXPECT_THROW(BilinearGame(Matrix::Identity(1), -1.0), InvalidArgument);
}

TEST(DiracGanTest, IsScalarBilinear) {
  DiracGan game;
  EXPECT_EQ(game.dim(), 2u);
  EXPECT_EQ(game.Operator(ParamVector{2, 3}), (ParamVector{3, -2}));
  const auto [lg, ld] = game.PlayerLosses(ParamVector{2, 3});
  EXPECT_EQ(lg, 6.0L);
  EXPECT_EQ(ld, -6.0L);
}

TEST(GradCheckTest, LinearGamesAreExact) {
  Rng rng(8);
  BilinearGame bilinear(Matrix::Gaussian(2, 3, rng));
  QuadraticGame quadratic(0.7, Matrix::Gaussian(3, 2, rng));
  for (int i = 0; i < 20; ++i) {
    const ParamVector w = RandomVector(5, rng);
    EXPECT_LT(GradCheck(bilinear, w, 1e-4), 1e-9);
    EXPECT_LT(GradCheck(quadratic, w, 1e-4), 1e-9);
  }
  EXPECT_THROW(GradCheck(bilinear, ParamVector(5, 0.0), 0.0), InvalidArgument);
}

class ToyWganTest : public ::testing::Test {
 protected:
  static const ToyWgan& Game() {
    static const ToyWgan game{ToyWganOptions{}};
    return game;
  }
};

TEST_F(ToyWganTest, Layout) {
  const ToyWgan& game = Game();
  const std::size_t h = game.options().hidden;
  EXPECT_EQ(game.dim_theta(), 5 * h + 2);
  EXPECT_EQ(game.dim(), 9 * h + 2);
  EXPECT_EQ(game.data().size(), game.options().data_points);
  EXPECT_EQ(game.latents().size(), game.options().latent_points);
  EXPECT_FALSE(game.saddle().has_value());
  EXPECT_THROW(ToyWgan(ToyWganOptions{.hidden = 17}), InvalidArgument);
}

TEST_F(ToyWganTest, GradientsMatchFiniteDifferences) {
  const ToyWgan& game = Game();
  Rng rng(9);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const ParamVector w = game.InitialParameters(rng);
    worst = std::max(worst, GradCheck(game, w, 1e-5));
    const ParamVector b = RandomInBox(game.dim(), 1.0, rng);
    worst = std::max(worst, GradCheck(game, b, 1e-5));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST_F(ToyWganTest, SamplesAreUnbiased) {
  const ToyWgan& game = Game();
  Rng rng(10);
  const ParamVector w = game.InitialParameters(rng);
  const ParamVector f = game.Operator(w);
  const int n = 40000;
  ParamVector mean(game.dim(), 0.0);
  ParamVector sq(game.dim(), 0.0);
  for (int i = 0; i < n; ++i) {
    const ParamVector g = game.Sample(w, rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
      mean[j] += g[j] / n;
      sq[j] += g[j] * g[j] / n;
    }
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double se = std::sqrt(std::max(0.0, sq[j] - mean[j] * mean[j]) / n);
    EXPECT_LE(std::abs(mean[j] - f[j]), 5.0 * se + 1e-12) << j;
  }
}

TEST_F(ToyWganTest, DeclaredConstantsHoldInBox) {
  const ToyWgan& game = Game();
  Rng rng(11);
  const double box = game.box_radius();
  for (int i = 0; i < 300; ++i) {
    const ParamVector w1 = RandomInBox(game.dim(), box, rng);
    ParamVector w2 = w1;
    const double step = i % 2 == 0 ? 1e-3 : 1.0;
    for (double& x : w2) x = std::clamp(x + step * rng.Normal(), -box, box);
    const ParamVector f1 = game.Operator(w1);
    EXPECT_LE(Norm(Subtract(f1, game.Operator(w2))),
              game.lipschitz() * Norm(Subtract(w1, w2)));
    EXPECT_LE(Norm(f1), game.gradient_bound());
  }
  EXPECT_GT(game.variance_bound(), 0.0);
}

TEST_F(ToyWganTest, InitialParameters) {
  const ToyWgan& game = Game();
  Rng rng(12);
  const ParamVector w = game.InitialParameters(rng);
  const std::size_t h = game.options().hidden;
  const double in_bound = 1.0 / std::sqrt(2.0);
  const double hid_bound = 1.0 / std::sqrt(static_cast<double>(h));
  for (std::size_t i = 0; i < 2 * h; ++i) EXPECT_LE(std::abs(w[i]), in_bound);
  for (std::size_t i = 2 * h; i < 3 * h; ++i) EXPECT_EQ(w[i], 0.0);
  for (std::size_t i = 3 * h; i < 5 * h; ++i) EXPECT_LE(std::abs(w[i]), hid_bound);
  EXPECT_EQ(w[5 * h], 0.0);
  EXPECT_EQ(w[5 * h + 1], 0.0);
  Rng again(12);
  EXPECT_EQ(game.InitialParameters(again), w);
}

TEST_F(ToyWganTest, ConstructionIsDeterministic) {
  const ToyWgan other{ToyWganOptions{}};
  EXPECT_EQ(other.lipschitz(), Game().lipschitz());
  EXPECT_EQ(other.gradient_bound(), Game().gradient_bound());
  EXPECT_EQ(other.data(), Game().data());
}

}  // namespace
}  // namespace dqgan
