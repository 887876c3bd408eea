#include "alberich/surrogate/dataset.hpp"
#include "alberich/surrogate/metrics.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace alberich;
using namespace alberich::surrogate;

TEST(Mape, IdenticalSeriesGiveZero) {
  const std::vector<double> t{0.2, 0.5, 0.9};
  EXPECT_EQ(mape(t, t).percent, 0.0);
}

TEST(Mape, TenPercentOverprediction) {
  const std::vector<double> t{0.2, 0.5, 0.9, 0.01};
  std::vector<double> p;
  for (double v : t) {
    p.push_back(1.1 * v);
  }
  EXPECT_NEAR(mape(p, t).percent, 10.0, 1e-12);
}

TEST(Mape, RowsAtOrBelowFloorAreExcludedAndCounted) {
  const std::vector<double> t{0.0, 1e-3, 0.5, -0.5};
  const std::vector<double> p{0.3, 0.3, 0.55, -0.45};
  const auto r = mape(p, t);
  EXPECT_EQ(r.excluded, 2u);
  EXPECT_EQ(r.included, 2u);
  EXPECT_NEAR(r.percent, 10.0, 1e-12);
  EXPECT_THROW(mape(std::vector<double>{1.0}, std::vector<double>{0.0}), InvalidInput);
  EXPECT_THROW(mape(std::vector<double>{1.0}, std::vector<double>{}), InvalidInput);
}

TEST(PearsonR, PerfectCorrelationAndAnticorrelation) {
  const std::vector<double> t{0.1, 0.4, 0.3, 0.8};
  std::vector<double> neg;
  for (double v : t) {
    neg.push_back(-v);
  }
  EXPECT_NEAR(pearson_r(t, t), 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(neg, t), -1.0, 1e-15);
}

TEST(PearsonR, ZeroVarianceIsAnError) {
  EXPECT_THROW(pearson_r(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), InvalidInput);
  EXPECT_THROW(pearson_r(std::vector<double>{1}, std::vector<double>{1}), InvalidInput);
}

namespace {

LabeledDataset rows(std::size_t n) {
  LabeledDataset d;
  for (std::size_t i = 0; i < n; ++i) {
    RawInput x{};
    x[0] = static_cast<double>(i);
    d.add(x, 0.5);
  }
  return d;
}

std::array<std::size_t, 3> count(const LabeledDataset& d) {
  std::array<std::size_t, 3> c{};
  for (auto t : d.tags) {
    ++c[static_cast<std::size_t>(t)];
  }
  return c;
}

} // namespace

TEST(Split, HundredRows) {
  auto d = rows(100);
  split(d, 42);
  const auto c = count(d);
  EXPECT_EQ(c[0], 56u);
  EXPECT_EQ(c[1], 14u);
  EXPECT_EQ(c[2], 30u);
}

TEST(Split, SameSeedSameTags) {
  auto a = rows(500);
  auto b = rows(500);
  split(a, 9);
  split(b, 9);
  EXPECT_EQ(a.tags, b.tags);
  auto c = rows(500);
  split(c, 10);
  EXPECT_NE(a.tags, c.tags);
}

TEST(Split, TenThousandRowsProportions) {
  auto d = rows(10000);
  split(d, 5);
  const auto c = count(d);
  EXPECT_NEAR(static_cast<double>(c[0]), 5600.0, 1.0);
  EXPECT_NEAR(static_cast<double>(c[1]), 1400.0, 1.0);
  EXPECT_NEAR(static_cast<double>(c[2]), 3000.0, 1.0);
}

TEST(Split, DisjointAndExhaustiveForManySeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto d = rows(10 + seed * 7);
    split(d, seed);
    ASSERT_EQ(d.tags.size(), d.size());
    std::set<std::size_t> seen;
    for (auto s : {Split::train, Split::validation, Split::test}) {
      for (auto i : d.rows_tagged(s)) {
        EXPECT_TRUE(seen.insert(i).second);
      }
    }
    EXPECT_EQ(seen.size(), d.size());
    const auto c = count(d);
    const auto expected = split_counts(d.size());
    EXPECT_EQ(c[0], expected.train);
    EXPECT_EQ(c[1], expected.validation);
    EXPECT_EQ(c[2], expected.test);
  }
  auto small = rows(9);
  EXPECT_THROW(split(small, 1), InvalidInput);
}

TEST(Dataset, CsvRoundTripAndSchema) {
  LabeledDataset d;
  d.add({5, 6, 30, 70, 40, 40, 40, 40, 100, 100, 123.5}, 0.25);
  d.add({1, 15, 10, 80, 10, 80, 10, 80, 30, 100, 10000}, 1.0);
  std::stringstream ss;
  write_dataset_csv(ss, d);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "r1,r2,D1,D2,B1,B2,B3,B4,h,t,frequency_Hz,absorption");
  const auto back = read_dataset_csv(ss);
  EXPECT_EQ(back.inputs, d.inputs);
  EXPECT_EQ(back.targets, d.targets);
  std::stringstream bad("r1,r2\n1,2\n");
  EXPECT_THROW(read_dataset_csv(bad), ConfigError);
  EXPECT_THROW(d.add({}, 1.5), InvalidInput);
}
