#include "alberich/core/random.hpp"
#include "alberich/surrogate/mlp.hpp"
#include "alberich/surrogate/normalizer.hpp"

#include "../support/gradient_check.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alberich;
using namespace alberich::surrogate;

TEST(Mlp, ZeroNetworkOutputsOneHalf) {
  const Mlp net({11, 200, 200, 200, 1});
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd x(11);
    for (int k = 0; k < 11; ++k) {
      x(k) = rng.uniform(-5.0, 5.0);
    }
    EXPECT_EQ(net.forward(x), 0.5);
  }
}

TEST(Mlp, ShapesFollowLayerSizes) {
  Rng rng(1);
  const auto net = Mlp::xavier({11, 200, 200, 200, 1}, rng);
  ASSERT_EQ(net.layer_count(), 4u);
  EXPECT_EQ(net.weights()[0].rows(), 200);
  EXPECT_EQ(net.weights()[0].cols(), 11);
  EXPECT_EQ(net.weights()[3].rows(), 1);
  EXPECT_EQ(net.biases()[2].size(), 200);
  EXPECT_EQ(net.parameter_count(), 11u * 200 + 200 + 2 * (200u * 200 + 200) + 200 + 1);
  const double a = std::sqrt(6.0 / 211.0);
  EXPECT_LE(net.weights()[0].cwiseAbs().maxCoeff(), a);
  EXPECT_GT(net.weights()[0].cwiseAbs().maxCoeff(), 0.9 * a);
}

TEST(Mlp, ShapeMismatchIsRejected) {
  const Mlp net({11, 4, 1});
  EXPECT_THROW((void)net.forward(Eigen::VectorXd::Zero(10)), InvalidInput);
  EXPECT_THROW(Mlp({11}), InvalidInput);
  EXPECT_THROW(Mlp({11, 0, 1}), InvalidInput);
  Gradient g;
  EXPECT_THROW(backprop(net, Eigen::MatrixXd::Zero(11, 3), Eigen::MatrixXd::Zero(1, 2), g), InvalidInput);
}

TEST(Mlp, ForwardMatchesStraightLineEvaluation) {
  Rng rng(21);
  const auto net = Mlp::xavier({11, 200, 200, 200, 1}, rng);
  Eigen::VectorXd x(11);
  for (int k = 0; k < 11; ++k) {
    x(k) = rng.uniform();
  }
  std::vector<double> a(x.data(), x.data() + x.size());
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto& w = net.weights()[l];
    std::vector<double> next(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      double z = net.biases()[l](i);
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        z += w(i, j) * a[static_cast<std::size_t>(j)];
      }
      next[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(-z));
    }
    a = std::move(next);
  }
  EXPECT_NEAR(net.forward(x), a[0], 1e-13);
}

TEST(Mlp, OutputStaysInsideOpenUnitInterval) {
  Mlp net({11, 3, 1});
  net.weights()[1].setConstant(1e6);
  net.biases()[1].setConstant(1e6);
  const double hi = net.forward(Eigen::VectorXd::Ones(11));
  EXPECT_LT(hi, 1.0);
  EXPECT_GT(hi, 0.0);
  net.weights()[1].setConstant(-1e6);
  net.biases()[1].setConstant(-1e6);
  const double lo = net.forward(Eigen::VectorXd::Ones(11));
  EXPECT_GT(lo, 0.0);
  Rng rng(4);
  const auto big = Mlp::xavier({11, 20, 20, 1}, rng);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd x(11);
    for (int k = 0; k < 11; ++k) {
      x(k) = rng.uniform(-1e3, 1e3);
    }
    const double y = big.forward(x);
    EXPECT_GT(y, 0.0);
    EXPECT_LT(y, 1.0);
  }
}

TEST(Backprop, MatchesCentralFiniteDifferences) {
  Rng rng(1);
  for (int n = 0; n < 20; ++n) {
    const auto net = fixtures::random_net(rng);
    for (int b = 0; b < 5; ++b) {
      const auto batch = fixtures::random_batch(rng, 1 + static_cast<int>(rng.below(10)));
      Gradient g;
      backprop(net, batch.x, batch.y, g);
      const auto fd = fixtures::finite_difference(net, batch.x, batch.y, 1e-5);
      EXPECT_LT(fixtures::max_relative_error(g, fd), 1e-4) << "net " << n << " batch " << b;
    }
  }
}

TEST(Backprop, ZeroErrorBatchGivesZeroGradient) {
  Rng rng(8);
  const auto net = Mlp::xavier({11, 7, 5, 1}, rng);
  const auto batch = fixtures::random_batch(rng, 6);
  const Eigen::MatrixXd y = net.forward_batch(batch.x);
  Gradient g;
  EXPECT_EQ(backprop(net, batch.x, y, g), 0.0);
  EXPECT_TRUE(g.is_zero());
}

TEST(Backprop, OneByOneClosedForm) {
  Mlp net({1, 1});
  net.weights()[0](0, 0) = 0.7;
  net.biases()[0](0) = -0.2;
  Eigen::MatrixXd x(1, 1);
  x << 1.3;
  Eigen::MatrixXd y(1, 1);
  y << 0.25;
  Gradient g;
  backprop(net, x, y, g);
  const double z = 0.7 * 1.3 - 0.2;
  const double s = 1.0 / (1.0 + std::exp(-z));
  const double expected = 2.0 * (s - 0.25) * s * (1.0 - s) * 1.3;
  EXPECT_NEAR(g.weights[0](0, 0), expected, 1e-15);
  EXPECT_NEAR(g.biases[0](0), expected / 1.3, 1e-15);
}

TEST(Normalizer, LowerBoundsAndTenHertzMapToZero) {
  const auto n = Normalizer::for_design_space();
  RawInput lo{};
  for (std::size_t i = 0; i < 10; ++i) {
    lo[i] = acoustics::lower_bounds[i];
  }
  lo[10] = 10.0;
  EXPECT_TRUE(n.normalize(lo).isZero(0.0));
  RawInput hi{};
  for (std::size_t i = 0; i < 10; ++i) {
    hi[i] = acoustics::upper_bounds[i];
  }
  hi[10] = 10000.0;
  EXPECT_TRUE(n.normalize(hi).isApprox(Eigen::VectorXd::Ones(11), 1e-15));
}

TEST(Normalizer, RoundTripInRange) {
  Rng rng(31);
  for (bool log_f : {true, false}) {
    const auto n = Normalizer::for_design_space(10.0, 10000.0, log_f);
    for (int k = 0; k < 1000; ++k) {
      RawInput x{};
      for (std::size_t i = 0; i < 10; ++i) {
        x[i] = rng.uniform(acoustics::lower_bounds[i], acoustics::upper_bounds[i]);
      }
      x[10] = rng.uniform(10.0, 10000.0);
      const auto u = n.normalize(x);
      EXPECT_GE(u.minCoeff(), 0.0);
      EXPECT_LE(u.maxCoeff(), 1.0);
      const auto back = n.denormalize(u);
      for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_NEAR(back[i], x[i], 1e-12 * std::max(1.0, std::abs(x[i])));
      }
    }
  }
}

TEST(Normalizer, RejectsEmptyRange) {
  auto n = Normalizer::for_design_space();
  n.upper[3] = n.lower[3];
  EXPECT_THROW(n.validate(), InvalidInput);
  EXPECT_THROW(Normalizer::for_design_space(0.0, 100.0, true), InvalidInput);
}
