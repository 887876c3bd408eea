#pragma once

#include "alberich/acoustics/coating.hpp"
#include "alberich/acoustics/media.hpp"
#include "alberich/acoustics/transfer_matrix.hpp"
#include "alberich/core/csv.hpp"
#include "alberich/core/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <string>

namespace alberich::acoustics {

inline void write_spectrum_csv(std::ostream& os, const AcousticResponse& r) {
  csv::Writer w(os, {"frequency_Hz", "R", "T", "A"});
  for (std::size_t i = 0; i < r.size(); ++i) {
    w.row({r.frequencies[i], r.R[i], r.T[i], r.A[i]});
  }
}

inline AcousticResponse read_spectrum_csv(std::istream& is) {
  const auto table = csv::read(is);
  const auto cf = table.column("frequency_Hz");
  const auto cr = table.column("R");
  const auto ct = table.column("T");
  const auto ca = table.column("A");
  AcousticResponse r;
  for (const auto& row : table.rows) {
    r.frequencies.push_back(row[cf]);
    r.R.push_back(row[cr]);
    r.T.push_back(row[ct]);
    r.A.push_back(row[ca]);
  }
  return r;
}

/// Layer list of a stack at one frequency, for debugging.
inline nlohmann::json stack_dump(const LayerStack& stack, double frequency_hz) {
  auto medium = [](const Medium& m) {
    return nlohmann::json{{"density", m.density}, {"modulus_re", m.modulus.real()}, {"modulus_im", m.modulus.imag()}};
  };
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : stack.layers) {
    auto j = medium(l.medium);
    j["thickness_m"] = l.thickness_m;
    layers.push_back(std::move(j));
  }
  return {{"frequency_Hz", frequency_hz}, {"front", medium(stack.front)}, {"layers", layers},
          {"back", medium(stack.back)}};
}

/// Material constants file: water, air, steel, and the coating polymer.
struct MaterialConstants {
  Environment environment;
  std::string pu_sidecar; ///< master-curve sidecar path, relative to the constants file
  double pu_density = 1026.0;
  double pu_poisson = 0.499;
};

inline nlohmann::json to_json(const MaterialConstants& m) {
  const auto& e = m.environment;
  return {{"water", {{"density", e.water.density}, {"sound_speed", e.water.sound_speed}}},
          {"air", {{"density", e.air.density}, {"sound_speed", e.air.sound_speed}}},
          {"steel",
           {{"density", e.steel.density},
            {"youngs_pa", e.steel.youngs_pa},
            {"poisson", e.steel.poisson},
            {"thickness_m", e.steel.thickness_m}}},
          {"pu", {{"master_curve", m.pu_sidecar}, {"density", m.pu_density}, {"poisson", m.pu_poisson}}}};
}

inline MaterialConstants material_constants_from_json(const nlohmann::json& j) {
  try {
    MaterialConstants m;
    auto fluid = [](const nlohmann::json& f) {
      return FluidConstants{f.at("density").get<double>(), f.at("sound_speed").get<double>()};
    };
    m.environment.water = fluid(j.at("water"));
    m.environment.air = fluid(j.at("air"));
    const auto& s = j.at("steel");
    m.environment.steel = {s.at("density").get<double>(), s.at("youngs_pa").get<double>(),
                           s.at("poisson").get<double>(), s.at("thickness_m").get<double>()};
    const auto& pu = j.at("pu");
    m.pu_sidecar = pu.at("master_curve").get<std::string>();
    m.pu_density = pu.value("density", 1026.0);
    m.pu_poisson = pu.value("poisson", 0.499);
    m.environment.water.medium().validate();
    m.environment.air.medium().validate();
    m.environment.steel.medium().validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed material constants: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("invalid material constants: ") + e.what());
  }
}

} // namespace alberich::acoustics
