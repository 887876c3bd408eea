#include "alberich/core/random.hpp"
#include "alberich/rheology/master_curve.hpp"
#include "alberich/rheology/material.hpp"
#include "alberich/rheology/synthetic.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alberich;
using namespace alberich::rheology;

TEST(PoissonFromModuli, AlgebraicCases) {
  EXPECT_DOUBLE_EQ(poisson_from_moduli(3.0, 1.0), 0.5);
  EXPECT_NEAR(poisson_from_moduli(2.6, 1.0), 0.3, 1e-15);
}

TEST(PoissonFromModuli, RejectsInconsistentPairs) {
  EXPECT_THROW(poisson_from_moduli(3.2, 1.0), InvalidInput); // nu = 0.6
  EXPECT_THROW(poisson_from_moduli(0.0, 1.0), InvalidInput);
  EXPECT_THROW(poisson_from_moduli(1.0, -1.0), InvalidInput);
  EXPECT_THROW(poisson_from_moduli(std::nan(""), 1.0), InvalidInput);
  EXPECT_GT(poisson_from_moduli(1e-9, 1.0), -1.0); // tiny E is still admissible
}

TEST(PoissonFromModuli, InvertsShearRelationForAdmissibleRatios) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double nu = rng.uniform(-0.99, 0.5);
    const double g = std::pow(10.0, rng.uniform(3.0, 11.0));
    EXPECT_NEAR(poisson_from_moduli(2.0 * (1.0 + nu) * g, g), nu, 4e-16) << nu << " " << g;
  }
}

TEST(AveragePoisson, Pu80PairedFixtureAveragesTo0499) {
  const auto fx = pu80_like();
  const auto e = build_master_curve(fx.youngs_sweeps(), fx.reference_c).curve;
  const auto g = build_master_curve(fx.shear_sweeps(), fx.reference_c).curve;
  EXPECT_NEAR(average_poisson(e, g, 1.0, 1000.0), 0.499, 0.001);
}

TEST(ViscoelasticMaterial, DerivedModuliFollowIsotropicElasticity) {
  const auto m = constant_modulus("pu", {8.8e6, 2.3e6});
  const double nu = 0.499;
  EXPECT_NEAR(std::abs(m.shear(100.0) - std::complex<double>(8.8e6, 2.3e6) / (2.0 * (1.0 + nu))),
              0.0, 1e-6);
  const double factor = (1.0 - nu) / ((1.0 + nu) * (1.0 - 2.0 * nu));
  EXPECT_NEAR(m.longitudinal(100.0).real(), 8.8e6 * factor, 1e-3);
  EXPECT_NEAR(m.longitudinal(100.0).imag(), 2.3e6 * factor, 1e-3);
}

TEST(ViscoelasticMaterial, FrozenAndScaledVariants) {
  const auto fx = pu80_like();
  const auto base = from_master_curve("PU80", build_master_curve(fx.youngs_sweeps(), 15.0).curve);
  const auto frozen = frozen_at(base, 100.0);
  EXPECT_EQ(frozen.youngs(3000.0), base.youngs(100.0));
  EXPECT_GT(base.youngs(3000.0).real(), base.youngs(100.0).real());

  const auto stiff = with_storage_scale(base, 4.0);
  EXPECT_DOUBLE_EQ(stiff.youngs(500.0).real(), 4.0 * base.youngs(500.0).real());
  EXPECT_DOUBLE_EQ(stiff.youngs(500.0).imag(), base.youngs(500.0).imag());
}

TEST(ViscoelasticMaterial, ValidatesConstants) {
  EXPECT_THROW(constant_modulus("x", {1e7, 0.0}, -1.0), InvalidInput);
  EXPECT_THROW(constant_modulus("x", {1e7, 0.0}, 1000.0, 0.5), InvalidInput);
}
