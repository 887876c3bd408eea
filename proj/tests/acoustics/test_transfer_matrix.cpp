#include "alberich/acoustics/transfer_matrix.hpp"
#include "alberich/core/random.hpp"

#include "../support/interface_oracle.hpp"
#include "../support/random_stack.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace alberich;
using namespace alberich::acoustics;

namespace {

const Medium water = Environment{}.water.medium();

} // namespace

TEST(LayerMatrix, ZeroThicknessIsIdentity) {
  const auto t = layer_matrix({1026.0, {2.5e9, 4e8}}, 0.0, 700.0);
  EXPECT_TRUE(t.isApprox(Eigen::Matrix2cd::Identity(), 0.0));
}

TEST(LayerMatrix, HalfWavelengthIsMinusIdentity) {
  const double f = 1000.0;
  const double d = 1480.0 / f / 2.0;
  const auto t = layer_matrix(water, d, f);
  const double z = 1000.0 * 1480.0;
  EXPECT_LT(std::abs(t(0, 0) + 1.0), 1e-12);
  EXPECT_LT(std::abs(t(1, 1) + 1.0), 1e-12);
  EXPECT_LT(std::abs(t(0, 1)) / z, 1e-12);
  EXPECT_LT(std::abs(t(1, 0)) * z, 1e-12);
  EXPECT_NEAR(std::abs(t.determinant() - 1.0), 0.0, 1e-12);
}

TEST(LayerMatrix, DeterminantIsOneForCoatingMedia) {
  Rng rng(11);
  const Environment env;
  for (int i = 0; i < 2000; ++i) {
    const double f = fixtures::random_frequency(rng);
    const double storage = std::pow(10.0, rng.uniform(6.0, 8.0)) * 167.0;
    const Medium pu{1026.0, {storage, storage * rng.uniform(0.0, 0.6)}};
    for (const auto& m : {pu, env.water.medium(), env.air.medium(), env.steel.medium()}) {
      const auto t = layer_matrix(m, rng.uniform(0.0, 0.1), f);
      EXPECT_LT(std::abs(t.determinant() - 1.0), 1e-12);
    }
  }
  for (double d : {0.001, 0.1, 1.0, 7.3, 100.0}) {
    EXPECT_LT(std::abs(layer_matrix(water, d, 4321.0).determinant() - 1.0), 1e-12);
  }
}

// In a strongly attenuating layer cos kd and sin kd grow like exp(|Im kd|) and
// cos^2 + sin^2 = 1 can only be resolved to round-off relative to |cos kd|^2.
TEST(LayerMatrix, DeterminantIsOneToRoundOffForAnyMedium) {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const auto m = fixtures::random_medium(rng, 0.5);
    const auto t = layer_matrix(m, rng.uniform(0.0, 0.1), fixtures::random_frequency(rng));
    const double scale = std::max(1.0, std::norm(t(0, 0)));
    EXPECT_LT(std::abs(t.determinant() - 1.0) / scale, 1e-12);
  }
}

TEST(LayerMatrix, RejectsBadArguments) {
  EXPECT_THROW(layer_matrix(water, 0.01, 0.0), InvalidInput);
  EXPECT_THROW(layer_matrix(water, 0.01, -5.0), InvalidInput);
  EXPECT_THROW(layer_matrix(water, -0.01, 5.0), InvalidInput);
}

TEST(Wavenumber, ForwardWaveDecaysInLossyMedium) {
  const cplx k = wavenumber({1000.0, {1e9, 2e8}}, 100.0);
  EXPECT_GT(k.real(), 0.0);
  EXPECT_LT(k.imag(), 0.0);
  EXPECT_GT(characteristic_impedance({1000.0, {1e9, 2e8}}).real(), 0.0);
}

TEST(SolveStack, WaterLayersInWaterAreTransparent) {
  const LayerStack s{water, {{water, 0.02}, {water, 0.5}, {water, 0.0}}, water};
  for (double f : {10.0, 123.0, 9999.0}) {
    const auto r = solve_stack(s, f);
    EXPECT_LT(r.R, 1e-12);
    EXPECT_NEAR(r.T, 1.0, 1e-12);
  }
}

TEST(SolveStack, EmptyStackWithIdenticalHalfSpaces) {
  const auto r = solve_stack({water, {}, water}, 50.0);
  EXPECT_EQ(r.R, 0.0);
  EXPECT_EQ(r.T, 1.0);
  EXPECT_EQ(r.A, 0.0);
}

TEST(SolveStack, LosslessLayerAbsorbsNothing) {
  const Medium rubber{1100.0, {2.2e9, 0.0}};
  for (int i = 1; i <= 500; ++i) {
    const auto r = solve_stack({water, {{rubber, 0.05}}, water}, 20.0 * i);
    EXPECT_LT(std::abs(r.A), 1e-10);
  }
}

TEST(SolveStack, HalfSpaceMismatchMatchesFresnel) {
  const Medium air = Environment{}.air.medium();
  const auto r = solve_stack({water, {}, air}, 100.0);
  const double zw = 1000.0 * 1480.0;
  const double za = 1.2 * 343.0;
  EXPECT_NEAR(r.R, std::pow((za - zw) / (za + zw), 2), 1e-15);
  EXPECT_NEAR(r.T, 4.0 * za * zw / std::pow(za + zw, 2), 1e-15);
}

TEST(SolveStack, EnergyBalanceAndPassivity) {
  Rng rng(2024);
  for (int s = 0; s < 200; ++s) {
    const auto stack = fixtures::random_stack(rng, 1 + static_cast<int>(rng.below(6)));
    for (int k = 0; k < 20; ++k) {
      const auto r = solve_stack(stack, fixtures::random_frequency(rng));
      EXPECT_LT(std::abs(r.R + r.T + r.A - 1.0), 1e-9);
      EXPECT_GE(r.R, 0.0);
      EXPECT_LE(r.R, 1.0);
      EXPECT_GE(r.T, 0.0);
      EXPECT_LE(r.T, 1.0);
      EXPECT_GE(r.A, 0.0);
      EXPECT_LE(r.A, 1.0);
    }
  }
}

TEST(SolveStack, ThreeLayerStackMatchesInterfaceOracle) {
  const LayerStack s{water,
                     {{{1026.0, {2.7e9, 6e8}}, 0.03}, {{7850.0, {2.7e11, 0.0}}, 0.01}, {{1200.0, {5e8, 1e8}}, 0.02}},
                     water};
  for (double f : {10.0, 500.0, 2500.0, 10000.0}) {
    const auto a = solve_stack(s, f);
    const auto b = oracle::interface_solve(s, f);
    EXPECT_NEAR(a.R, b.R, 1e-10);
    EXPECT_NEAR(a.T, b.T, 1e-10);
    EXPECT_LT(std::abs(a.reflection - b.r), 1e-10);
    EXPECT_LT(std::abs(a.transmission - b.tau), 1e-10);
  }
}

TEST(SolveStack, RandomStacksMatchInterfaceOracle) {
  Rng rng(99);
  for (int s = 0; s < 100; ++s) {
    const auto stack = fixtures::random_stack(rng, 2 + static_cast<int>(rng.below(5)));
    const double f = fixtures::random_frequency(rng);
    const auto a = solve_stack(stack, f);
    const auto b = oracle::interface_solve(stack, f);
    EXPECT_NEAR(a.R, b.R, 1e-10) << s;
    EXPECT_NEAR(a.T, b.T, 1e-10) << s;
  }
}

TEST(SolveStack, RejectsActiveMedia) {
  EXPECT_THROW(solve_stack({water, {{{1000.0, {1e9, -1.0}}, 0.01}}, water}, 10.0), InvalidInput);
  EXPECT_THROW(solve_stack({water, {{{0.0, {1e9, 0.0}}, 0.01}}, water}, 10.0), InvalidInput);
}
