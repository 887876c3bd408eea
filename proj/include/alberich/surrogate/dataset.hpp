#pragma once

#include "alberich/core/csv.hpp"
#include "alberich/core/error.hpp"
#include "alberich/core/random.hpp"
#include "alberich/surrogate/normalizer.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace alberich::surrogate {

enum class Split : unsigned char { train, validation, test };

struct LabeledDataset {
  std::vector<RawInput> inputs;
  std::vector<double> targets;
  std::vector<Split> tags; ///< empty until split() assigns them

  [[nodiscard]] std::size_t size() const noexcept { return inputs.size(); }

  void add(const RawInput& x, double target) {
    if (!(target >= 0.0 && target <= 1.0)) {
      throw InvalidInput("dataset target outside [0, 1]: " + std::to_string(target));
    }
    inputs.push_back(x);
    targets.push_back(target);
  }

  [[nodiscard]] std::vector<std::size_t> rows_tagged(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i] == s) {
        out.push_back(i);
      }
    }
    return out;
  }
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// 70% train / 30% test, then 20% of the training share re-tagged validation.
inline SplitCounts split_counts(std::size_t n) {
  const auto train_share = static_cast<std::size_t>(std::llround(0.7 * static_cast<double>(n)));
  const auto validation = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(train_share)));
  return {train_share - validation, validation, n - train_share};
}

/// Seeded shuffle, then tags in the order train, validation, test.
inline void split(LabeledDataset& data, std::uint64_t seed) {
  if (data.size() < 10) {
    throw InvalidInput("split needs at least 10 rows");
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = Rng(seed).split(streams::split);
  rng.shuffle(std::span<std::size_t>(order));
  const auto counts = split_counts(data.size());
  data.tags.assign(data.size(), Split::test);
  for (std::size_t k = 0; k < counts.train + counts.validation; ++k) {
    data.tags[order[k]] = k < counts.train ? Split::train : Split::validation;
  }
}

inline const std::vector<std::string>& dataset_header() {
  static const std::vector<std::string> h{"r1", "r2", "D1", "D2", "B1", "B2", "B3", "B4",
                                          "h",  "t",  "frequency_Hz", "absorption"};
  return h;
}

inline void write_dataset_csv(std::ostream& os, const LabeledDataset& data) {
  csv::Writer w(os, dataset_header());
  std::array<double, input_dimension + 1> row{};
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::copy(data.inputs[i].begin(), data.inputs[i].end(), row.begin());
    row.back() = data.targets[i];
    w.row(row.begin(), row.end());
  }
}

inline LabeledDataset read_dataset_csv(std::istream& is) {
  const auto table = csv::read(is);
  if (table.header != dataset_header()) {
    throw ConfigError("dataset header does not match r1,...,t,frequency_Hz,absorption");
  }
  LabeledDataset data;
  for (const auto& row : table.rows) {
    RawInput x{};
    std::copy(row.begin(), row.begin() + input_dimension, x.begin());
    try {
      data.add(x, row.back());
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
  return data;
}

inline LabeledDataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  return read_dataset_csv(in);
}

} // namespace alberich::surrogate
