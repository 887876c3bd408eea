#pragma once

#include "alberich/core/csv.hpp"
#include "alberich/core/error.hpp"
#include "alberich/rheology/types.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace alberich::rheology {

/// DMA table: temperature_C,frequency_Hz,storage_Pa,loss_Pa; rows grouped by temperature.
inline void write_dma_csv(std::ostream& os, std::span<const IsothermalSweep> sweeps) {
  csv::Writer w(os, {"temperature_C", "frequency_Hz", "storage_Pa", "loss_Pa"});
  for (const auto& s : sweeps) {
    for (const auto& p : s.points) {
      w.row({s.temperature_c, p.frequency_hz, p.storage_pa, p.loss_pa});
    }
  }
}

inline std::vector<IsothermalSweep> read_dma_csv(std::istream& is) {
  const auto table = csv::read(is);
  const auto ct = table.column("temperature_C");
  const auto cf = table.column("frequency_Hz");
  const auto cs = table.column("storage_Pa");
  const auto cl = table.column("loss_Pa");
  std::vector<IsothermalSweep> sweeps;
  for (const auto& row : table.rows) {
    if (sweeps.empty() || sweeps.back().temperature_c != row[ct]) {
      for (const auto& s : sweeps) {
        if (s.temperature_c == row[ct]) {
          throw ConfigError("DMA rows for " + csv::format(row[ct]) + " C are not contiguous");
        }
      }
      sweeps.push_back({row[ct], {}});
    }
    sweeps.back().points.push_back({row[cf], row[cs], row[cl]});
  }
  if (sweeps.empty()) {
    throw ConfigError("DMA table has no rows");
  }
  for (const auto& s : sweeps) {
    s.validate();
  }
  return sweeps;
}

inline std::vector<IsothermalSweep> read_dma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  return read_dma_csv(in);
}

inline void write_master_curve_csv(std::ostream& os, const MasterCurve& curve) {
  csv::Writer w(os, {"log10_freq", "storage_Pa", "loss_Pa"});
  for (const auto& p : curve.points) {
    w.row({p.log10_frequency, p.storage_pa, p.loss_pa});
  }
}

inline nlohmann::json master_curve_sidecar(const MasterCurve& curve, const ShiftFactors& shifts) {
  nlohmann::json j;
  j["reference_temperature_c"] = curve.reference_temperature_c;
  auto& arr = j["shifts"] = nlohmann::json::array();
  for (const auto& e : shifts.entries) {
    arr.push_back({{"temperature_c", e.temperature_c},
                   {"log10_horizontal_shift", e.log10_horizontal},
                   {"log10_vertical_shift", e.log10_vertical}});
  }
  j["poly_storage"] = curve.poly_storage;
  j["poly_loss"] = curve.poly_loss;
  j["lossless"] = curve.lossless;
  j["log10_freq_min"] = curve.log10_freq_min;
  j["log10_freq_max"] = curve.log10_freq_max;
  j["max_residual_storage"] = curve.max_residual_storage;
  j["max_residual_loss"] = curve.max_residual_loss;
  return j;
}

/// Rebuilds the evaluable part of a master curve (no data points) from its sidecar.
inline MasterCurve master_curve_from_sidecar(const nlohmann::json& j, ShiftFactors* shifts = nullptr) {
  try {
    MasterCurve c;
    c.reference_temperature_c = j.at("reference_temperature_c").get<double>();
    c.poly_storage = j.at("poly_storage").get<Quartic>();
    c.poly_loss = j.at("poly_loss").get<Quartic>();
    c.lossless = j.value("lossless", false);
    c.log10_freq_min = j.at("log10_freq_min").get<double>();
    c.log10_freq_max = j.at("log10_freq_max").get<double>();
    c.max_residual_storage = j.value("max_residual_storage", 0.0);
    c.max_residual_loss = j.value("max_residual_loss", 0.0);
    if (shifts != nullptr) {
      shifts->reference_temperature_c = c.reference_temperature_c;
      shifts->entries.clear();
      for (const auto& e : j.at("shifts")) {
        shifts->entries.push_back({e.at("temperature_c").get<double>(),
                                   e.at("log10_horizontal_shift").get<double>(),
                                   e.at("log10_vertical_shift").get<double>()});
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed master-curve sidecar: ") + e.what());
  }
}

inline MasterCurve read_master_curve_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return master_curve_from_sidecar(j);
}

} // namespace alberich::rheology
