#include "alberich/pipeline/dataset_gen.hpp"
#include "alberich/rheology/master_curve.hpp"
#include "alberich/rheology/synthetic.hpp"
#include "alberich/surrogate/train.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace alberich;
using namespace alberich::pipeline;

namespace {

const rheology::ViscoelasticMaterial& pu80() {
  static const auto m = [] {
    const auto fx = rheology::pu80_like();
    return rheology::from_master_curve("PU80", rheology::build_master_curve(fx.youngs_sweeps(), 15.0).curve);
  }();
  return m;
}

SamplingPlan plan(int designs, int freqs, std::uint64_t seed) {
  SamplingPlan p;
  p.n_designs = designs;
  p.frequencies = log_grid(10.0, 10000.0, freqs);
  p.seed = seed;
  return p;
}

std::string csv_text(const surrogate::LabeledDataset& d) {
  std::ostringstream os;
  surrogate::write_dataset_csv(os, d);
  return os.str();
}

} // namespace

TEST(Grids, LogGridHitsBothEndsExactly) {
  const auto f = log_grid(10.0, 10000.0, 375);
  ASSERT_EQ(f.size(), 375u);
  EXPECT_EQ(f.front(), 10.0);
  EXPECT_EQ(f.back(), 10000.0);
  for (std::size_t i = 1; i < f.size(); ++i) {
    EXPECT_GT(f[i], f[i - 1]);
  }
  EXPECT_NEAR(f[187], std::sqrt(10.0 * 10000.0), 1e-9);
}

TEST(Grids, TwentyHertzSweepHasFiveHundredPoints) {
  const auto f = linear_grid(10.0, 10000.0, 20.0);
  ASSERT_EQ(f.size(), 500u);
  EXPECT_EQ(f.front(), 10.0);
  EXPECT_DOUBLE_EQ(f.back(), 9990.0);
}

TEST(Wilson, LowerBoundBracketsProportion) {
  EXPECT_LT(wilson_lower(990, 1000, 3.0), 0.99);
  EXPECT_GT(wilson_lower(1000, 1000, 3.0), 0.99);
  EXPECT_NEAR(wilson_lower(500, 1000, 1.96), 0.469, 1e-3);
  EXPECT_EQ(wilson_lower(0, 0, 3.0), 0.0);
}

TEST(GenerateDataset, OneDesignThreeFrequenciesGivesThreeRows) {
  const auto g = generate_dataset(plan(1, 3, 5), pu80());
  EXPECT_EQ(g.data.size(), 3u);
  EXPECT_EQ(g.designs.size(), 1u);
  EXPECT_EQ(g.stats.draws - g.stats.rejected, 1);
}

TEST(GenerateDataset, DefaultDeskPlanGivesOneHundredFiftyThousandRows) {
  const auto g = generate_dataset(plan(400, 375, 2024), pu80());
  EXPECT_EQ(g.data.size(), 150000u);
  // Roughly one uniform draw in a hundred clears every constraint; the guard must not trip here.
  EXPECT_GT(g.stats.rejection_rate(), 0.95);
  EXPECT_LT(g.stats.rejection_rate(), 0.995);
}

TEST(GenerateDataset, SameSeedGivesByteIdenticalCsv) {
  const auto a = csv_text(generate_dataset(plan(6, 40, 77), pu80()).data);
  const auto b = csv_text(generate_dataset(plan(6, 40, 77), pu80()).data);
  const auto c = csv_text(generate_dataset(plan(6, 40, 78), pu80()).data);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(GenerateDataset, RowsParseBackToFeasibleCellsAndUnitTargets) {
  const auto g = generate_dataset(plan(8, 25, 3), pu80());
  std::istringstream in(csv_text(g.data));
  const auto back = surrogate::read_dataset_csv(in);
  ASSERT_EQ(back.size(), g.data.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& x = back.inputs[i];
    const acoustics::UnitCell cell{x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[8], x[9]};
    EXPECT_TRUE(acoustics::within_bounds(cell));
    EXPECT_EQ(acoustics::clearance_violation_mm(cell), 0.0);
    EXPECT_GE(x[10], 10.0);
    EXPECT_LE(x[10], 10000.0);
    EXPECT_GE(back.targets[i], 0.0);
    EXPECT_LE(back.targets[i], 1.0);
    EXPECT_EQ(back.inputs[i], g.data.inputs[i]);
    EXPECT_EQ(back.targets[i], g.data.targets[i]);
  }
}

TEST(GenerateDataset, ImpossibleClearanceTripsRejectionGuard) {
  auto p = plan(5, 3, 1);
  p.rules.min_edge_clearance_mm = 30.0; // a void would need t, h > 60 mm plus twice its radius
  try {
    (void)generate_dataset(p, pu80());
    FAIL() << "expected the rejection guard to trip";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("rejection rate"), std::string::npos);
  }
}

TEST(GenerateDataset, RejectsGridOutsideBand) {
  auto p = plan(1, 3, 1);
  p.frequencies = {5.0, 100.0};
  EXPECT_THROW((void)generate_dataset(p, pu80()), InvalidInput);
  p.frequencies = {100.0, 50.0};
  EXPECT_THROW((void)generate_dataset(p, pu80()), InvalidInput);
  p = plan(0, 3, 1);
  EXPECT_THROW((void)generate_dataset(p, pu80()), InvalidInput);
}

// Training on solver labels at the paper's learning rate and batch size must
// cut the held-out loss by an order of magnitude. 54 designs x 375 = 20 250 rows.
TEST(DeskScaleTraining, ValidationLossDropsTenfold) {
  auto g = generate_dataset(plan(54, 375, 11), pu80());
  ASSERT_GE(g.data.size(), 20000u);
  surrogate::split(g.data, 11);
  surrogate::TrainConfig cfg;
  cfg.epochs = 40;
  cfg.seed = 11;
  const auto model = surrogate::fit_surrogate(g.data, surrogate::Normalizer::for_design_space(10.0, 10000.0, true), cfg, "PU80");
  ASSERT_EQ(model.trace.size(), 41u);
  const double initial = model.trace.front().validation_mse;
  const double final = model.trace.back().validation_mse;
  EXPECT_LT(final * 10.0, initial) << "initial " << initial << " final " << final;
}
