#include "alberich/acoustics/coating.hpp"
#include "alberich/acoustics/homogenize.hpp"
#include "alberich/acoustics/peaks.hpp"
#include "alberich/core/random.hpp"
#include "alberich/rheology/master_curve.hpp"
#include "alberich/rheology/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace alberich;
using namespace alberich::acoustics;

namespace {

MatrixSample pu_sample(cplx youngs) {
  const double nu = 0.499;
  return {1026.0, youngs * ((1 - nu) / ((1 + nu) * (1 - 2 * nu))), youngs / (2 * (1 + nu))};
}

} // namespace

TEST(Homogenize, EmptyVoidReturnsMatrixExactly) {
  const auto m = pu_sample({8.8e6, 2.3e6});
  const auto eff = homogenize_void_layer(m, 0.0, 2, 0.1, 500.0);
  EXPECT_EQ(eff.density, m.density);
  EXPECT_EQ(eff.modulus, m.longitudinal);
}

TEST(Homogenize, TinyVoidApproachesMatrix) {
  const auto m = pu_sample({8.8e6, 2.3e6});
  const auto eff = homogenize_void_layer(m, 1e-9, 2, 0.1, 500.0);
  EXPECT_NEAR(eff.density / m.density, 1.0, 1e-7);
  EXPECT_LT(std::abs(eff.modulus / m.longitudinal - 1.0), 1e-7);
}

TEST(Homogenize, StaticLimitOfLosslessMatrix) {
  const auto m = pu_sample({1e7, 0.0});
  const double r = 0.01;
  const double h = 0.1;
  const double phi = fill_fraction(r, 2, h);
  EXPECT_NEAR(phi, std::numbers::pi / 10.0, 1e-15);
  const auto eff = homogenize_void_layer(m, r, 2, h, 0.0);
  EXPECT_EQ(eff.modulus.imag(), 0.0);
  EXPECT_NEAR(eff.modulus.real(), m.longitudinal.real() * (1 - phi) / (1 + phi), 1e-6);
  EXPECT_NEAR(eff.density, (1 - phi) * 1026.0, 1e-12);
}

TEST(Homogenize, RejectsFillAtOrAboveLimit) {
  const auto m = pu_sample({1e7, 1e6});
  const double h = 0.03;
  const double r_limit = 0.9 * 2.0 * h / (2.0 * std::numbers::pi);
  EXPECT_THROW(homogenize_void_layer(m, r_limit * 1.0001, 2, h, 100.0), InfeasibleGeometry);
  EXPECT_NO_THROW(homogenize_void_layer(m, r_limit * 0.999, 2, h, 100.0));
  EXPECT_NEAR(max_void_radius(30.0, 2, 0.9), r_limit * 1e3, 1e-12);
}

TEST(Homogenize, RejectsBadArguments) {
  const auto m = pu_sample({1e7, 1e6});
  EXPECT_THROW(homogenize_void_layer(m, -0.001, 2, 0.1, 100.0), InvalidInput);
  EXPECT_THROW(homogenize_void_layer(m, 0.001, 2, 0.0, 100.0), InvalidInput);
  EXPECT_THROW(homogenize_void_layer(m, 0.001, 2, 0.1, -1.0), InvalidInput);
}

TEST(Homogenize, EffectiveMediumIsPassive) {
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    const double storage = std::pow(10.0, rng.uniform(6.0, 9.0));
    const auto lossy = pu_sample({storage, storage * rng.uniform(0.0, 1.0)});
    const double h = rng.uniform(0.03, 0.1);
    const double r = rng.uniform(0.001, 0.85 * max_void_radius(h, 2, 0.9));
    const auto eff = homogenize_void_layer(lossy, r, 2, h, rng.uniform(0.0, 20000.0));
    EXPECT_NO_THROW(eff.validate());
  }
}

TEST(Homogenize, SingleVoidReferenceResonance) {
  const auto fx = rheology::pu80_like();
  const auto mat = rheology::from_master_curve("PU80", rheology::build_master_curve(fx.youngs_sweeps(), 15.0).curve);
  std::vector<double> f;
  for (int i = 0; i < 1500; ++i) {
    f.push_back(std::pow(10.0, 1.0 + 3.0 * i / 1499.0));
  }
  VoidLayerClosure one_void;
  one_void.voids_per_layer = 1;
  // r1 = r2 = 10 mm: both void layers hold a single void.
  const CoatingSolver solver(mat, f, true, {}, one_void);
  const auto resp = solver.solve({10, 10, 30, 70, 50, 50, 50, 50, 100, 100});
  const auto peak = first_peak(resp.frequencies, resp.A);
  ASSERT_TRUE(peak.has_value());
  EXPECT_GT(peak->frequency_hz, 100.0);
  EXPECT_LT(peak->frequency_hz, 10000.0);
  RecordProperty("reference_resonance_hz", std::to_string(peak->frequency_hz));
}
