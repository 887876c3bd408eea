#pragma once

#include "alberich/acoustics/coating.hpp"
#include "alberich/acoustics/io.hpp"
#include "alberich/core/error.hpp"
#include "alberich/inverse/optimize.hpp"
#include "alberich/pipeline/benchmark.hpp"
#include "alberich/pipeline/config.hpp"
#include "alberich/pipeline/dataset_gen.hpp"
#include "alberich/pipeline/manifest.hpp"
#include "alberich/pipeline/report.hpp"
#include "alberich/rheology/io.hpp"
#include "alberich/rheology/master_curve.hpp"
#include "alberich/rheology/material.hpp"
#include "alberich/rheology/synthetic.hpp"
#include "alberich/surrogate/dataset.hpp"
#include "alberich/surrogate/model_io.hpp"
#include "alberich/surrogate/train.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace alberich::pipeline {

namespace fs = std::filesystem;

/// Exit status of the command-line tool.
enum class ExitCode : int { ok = 0, config = 2, numerical = 3, infeasible = 4 };

struct StageResult {
  std::string stage;
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  ExitCode exit = ExitCode::ok;
  nlohmann::json summary = nlohmann::json::object();
  std::string started_utc = utc_timestamp();
};

/// Reference cell for sweeps when none is given on the command line.
inline acoustics::UnitCell default_cell() { return {6, 10, 25, 60, 25, 75, 25, 75, 100, 100}; }

struct LoadedMaterial {
  rheology::ViscoelasticMaterial material;
  std::optional<rheology::MasterCurveBuild> build; ///< present when built from sweeps
  std::vector<rheology::IsothermalSweep> sweeps;
  std::vector<fs::path> inputs;
};

inline LoadedMaterial load_material(const Config& cfg) {
  const auto& m = cfg.material;
  LoadedMaterial out;
  if (!m.master_curve.empty()) {
    const auto path = cfg.resolve(m.master_curve);
    out.material = rheology::from_master_curve(m.name, rheology::read_master_curve_sidecar(path.string()), m.density,
                                               m.poisson);
    out.inputs.push_back(path);
    return out;
  }
  if (!m.dma_csv.empty()) {
    const auto path = cfg.resolve(m.dma_csv);
    out.sweeps = rheology::read_dma_file(path.string());
    out.inputs.push_back(path);
  } else {
    try {
      out.sweeps = rheology::fixture_by_name(m.fixture).youngs_sweeps();
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
  out.build = rheology::build_master_curve(out.sweeps, m.reference_temperature_c);
  out.material = rheology::from_master_curve(m.name, out.build->curve, m.density, m.poisson);
  return out;
}

inline void write_manifest(const Config& cfg, const StageResult& r) {
  RunManifest man;
  man.command = r.stage;
  man.seed = cfg.seed;
  man.started_utc = r.started_utc;
  man.inputs = r.inputs;
  man.outputs = r.outputs;
  man.finished_utc = utc_timestamp();
  const auto dir = cfg.resolve(cfg.paths.output_dir);
  auto j = man.to_json(dir);
  j["config"] = to_json(cfg);
  j["summary"] = r.summary;
  write_text(dir / (r.stage + ".manifest.json"), j.dump(2) + "\n");
}

inline std::string to_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline StageResult stage_mastercurve(const Config& cfg) {
  StageResult r{"mastercurve", {}, {}, ExitCode::ok, nlohmann::json::object()};
  auto lm = load_material(cfg);
  r.inputs = lm.inputs;
  if (!lm.build) {
    throw ConfigError("mastercurve needs DMA sweeps (material.dma_csv or material.fixture), not a prebuilt sidecar");
  }
  if (cfg.material.dma_csv.empty()) {
    std::ostringstream dma;
    rheology::write_dma_csv(dma, lm.sweeps);
    r.outputs.push_back(cfg.output("dma.csv"));
    write_text(r.outputs.back(), dma.str());
  }
  std::ostringstream curve;
  rheology::write_master_curve_csv(curve, lm.build->curve);
  r.outputs.push_back(cfg.output("master_curve.csv"));
  write_text(r.outputs.back(), curve.str());
  r.outputs.push_back(cfg.output("master_curve.json"));
  write_text(r.outputs.back(), to_text(rheology::master_curve_sidecar(lm.build->curve, lm.build->shifts)));
  r.summary = {{"cost_before", lm.build->cost_before}, {"cost_after", lm.build->cost_after}};
  write_manifest(cfg, r);
  return r;
}

inline StageResult stage_sweep(const Config& cfg, const acoustics::UnitCell& cell, double step_hz = 10.0) {
  StageResult r{"sweep", {}, {}, ExitCode::ok, nlohmann::json::object()};
  if (!acoustics::within_bounds(cell)) {
    throw ConfigError("sweep cell lies outside the design bounds");
  }
  const auto lm = load_material(cfg);
  r.inputs = lm.inputs;
  const auto freqs = linear_grid(cfg.objective.f_min_hz, cfg.objective.f_max_hz, step_hz);
  const auto backed = acoustics::absorption_spectrum(cell, lm.material, freqs, true);
  const auto bare = acoustics::absorption_spectrum(cell, lm.material, freqs, false);
  std::ostringstream a;
  std::ostringstream b;
  acoustics::write_spectrum_csv(a, backed);
  acoustics::write_spectrum_csv(b, bare);
  r.outputs.push_back(cfg.output("sweep_backed.csv"));
  write_text(r.outputs.back(), a.str());
  r.outputs.push_back(cfg.output("sweep_unbacked.csv"));
  write_text(r.outputs.back(), b.str());
  const auto svgs = emit_report(cfg.output("sweep"), {{"steel-air backing", freqs, backed.A}, {"water backing", freqs, bare.A}},
                                cell);
  r.outputs.insert(r.outputs.end(), svgs.begin(), svgs.end());
  r.summary = {{"max_T_backed", *std::max_element(backed.T.begin(), backed.T.end())}};
  write_manifest(cfg, r);
  return r;
}

inline SamplingPlan sampling_plan(const Config& cfg) {
  SamplingPlan p;
  p.n_designs = cfg.sampling.n_designs;
  p.frequencies = log_grid(cfg.sampling.f_min_hz, cfg.sampling.f_max_hz, cfg.sampling.n_frequencies);
  p.seed = cfg.seed;
  p.rules = cfg.objective.penalty.rules;
  p.with_backing = cfg.sampling.with_backing;
  p.max_rejection_rate = cfg.sampling.max_rejection_rate;
  return p;
}

inline StageResult stage_gen_dataset(const Config& cfg) {
  StageResult r{"gen-dataset", {}, {}, ExitCode::ok, nlohmann::json::object()};
  const auto lm = load_material(cfg);
  r.inputs = lm.inputs;
  const auto gen = generate_dataset(sampling_plan(cfg), lm.material);
  std::ostringstream os;
  surrogate::write_dataset_csv(os, gen.data);
  r.outputs.push_back(cfg.output("dataset.csv"));
  write_text(r.outputs.back(), os.str());
  r.summary = {{"rows", gen.data.size()},
               {"designs", gen.designs.size()},
               {"draws", gen.stats.draws},
               {"rejected", gen.stats.rejected},
               {"rejection_rate", gen.stats.rejection_rate()}};
  write_manifest(cfg, r);
  return r;
}

inline StageResult stage_train(const Config& cfg, std::ostream* log = nullptr) {
  StageResult r{"train", {}, {}, ExitCode::ok, nlohmann::json::object()};
  const auto data_path = cfg.output("dataset.csv");
  r.inputs.push_back(data_path);
  auto data = surrogate::read_dataset_file(data_path.string());
  surrogate::split(data, cfg.seed);
  const auto model = surrogate::fit_surrogate(
      data, surrogate::Normalizer::for_design_space(cfg.sampling.f_min_hz, cfg.sampling.f_max_hz, true), cfg.training,
      cfg.material.name, [&](const surrogate::LossRecord& rec) {
        if (log != nullptr && (rec.epoch % 50 == 0 || rec.epoch == cfg.training.epochs)) {
          *log << "epoch " << rec.epoch << " train " << rec.train_mse << " validation " << rec.validation_mse << '\n';
        }
      });
  r.outputs.push_back(cfg.output("model.json"));
  write_text(r.outputs.back(), to_text(surrogate::to_json(model)));
  std::ostringstream trace;
  csv::Writer w(trace, {"epoch", "train_mse", "validation_mse"});
  for (const auto& rec : model.trace) {
    w.row({static_cast<double>(rec.epoch), rec.train_mse, rec.validation_mse});
  }
  r.outputs.push_back(cfg.output("loss_trace.csv"));
  write_text(r.outputs.back(), trace.str());
  r.summary = {{"test", surrogate::detail::metrics_json(model.test_metrics)},
               {"validation", surrogate::detail::metrics_json(model.validation_metrics)}};
  write_manifest(cfg, r);
  return r;
}

inline inverse::ObjectiveSpec objective_spec(const Config& cfg) {
  return inverse::make_objective_spec(cfg.objective.f_min_hz, cfg.objective.f_max_hz,
                                      static_cast<std::size_t>(cfg.objective.n_points));
}

inline nlohmann::json cell_json(const acoustics::UnitCell& c) {
  nlohmann::json j;
  const auto x = c.to_array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    j[std::string(acoustics::design_variable_names[i])] = x[i];
  }
  return j;
}

inline acoustics::UnitCell cell_from_json(const nlohmann::json& j) {
  std::array<double, acoustics::UnitCell::dimension> x{};
  try {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = j.at(std::string(acoustics::design_variable_names[i])).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed cell: ") + e.what());
  }
  return acoustics::UnitCell::from_array(x);
}

inline nlohmann::json candidate_json(const inverse::Candidate& c) {
  return {{"cell", cell_json(c.cell)},
          {"objective", c.objective},
          {"penalty", c.penalty},
          {"feasible", c.feasible},
          {"penalty_applied", c.penalty_applied}};
}

inline StageResult stage_optimize(const Config& cfg, std::ostream* log = nullptr) {
  StageResult r{"optimize", {}, {}, ExitCode::ok, nlohmann::json::object()};
  const auto lm = load_material(cfg);
  r.inputs = lm.inputs;
  const auto spec = objective_spec(cfg);
  const acoustics::CoatingSolver solver(lm.material, spec.frequencies, true);
  inverse::SpectrumEvaluator evaluator;
  std::optional<surrogate::SurrogateModel> model;
  if (cfg.evaluator == "surrogate") {
    const auto path = cfg.output("model.json");
    r.inputs.push_back(path);
    model = surrogate::read_model_file(path.string());
    evaluator = [&](const acoustics::UnitCell& c) { return model->spectrum(c, spec.frequencies); };
  } else {
    evaluator = inverse::solver_evaluator(solver);
  }
  inverse::OptimizeConfig ocfg;
  ocfg.ga = cfg.ga;
  ocfg.penalty = cfg.objective.penalty;
  ocfg.disagreement_threshold = cfg.objective.disagreement_threshold;
  const auto rep = inverse::optimize_coating(evaluator, cfg.evaluator, solver, spec, ocfg,
                                             [&](const inverse::GenerationStats& g) {
                                               if (log != nullptr && g.generation % 10 == 0) {
                                                 *log << "generation " << g.generation << " best " << g.best
                                                      << " mean " << g.mean << '\n';
                                               }
                                             });

  std::ostringstream trace;
  write_trace_csv(trace, rep.trace);
  r.outputs.push_back(cfg.output("ga_trace.csv"));
  write_text(r.outputs.back(), trace.str());

  nlohmann::json j;
  j["evaluator"] = rep.evaluator;
  j["best"] = candidate_json(rep.best);
  j["solver_objective"] = rep.solver_objective;
  j["disagreement"] = rep.disagreement;
  j["disagreement_flagged"] = rep.disagreement_flagged;
  j["max_transmission"] = rep.max_transmission;
  j["evaluations"] = rep.evaluations;
  j["infeasible_evaluations"] = rep.infeasible_evaluations;
  j["top"] = nlohmann::json::array();
  for (const auto& c : rep.top) {
    j["top"].push_back(candidate_json(c));
  }
  j["trace_csv"] = "ga_trace.csv";
  if (!rep.spectrum.frequencies.empty()) {
    std::ostringstream spectrum;
    acoustics::write_spectrum_csv(spectrum, rep.spectrum);
    r.outputs.push_back(cfg.output("best_spectrum.csv"));
    write_text(r.outputs.back(), spectrum.str());
    j["spectrum_csv"] = "best_spectrum.csv";
  }
  r.outputs.push_back(cfg.output("optimize_report.json"));
  write_text(r.outputs.back(), to_text(j));
  r.summary = {{"objective", rep.best.objective},
               {"solver_objective", rep.solver_objective},
               {"feasible", rep.best.feasible},
               {"disagreement_flagged", rep.disagreement_flagged}};
  if (!rep.best.feasible) {
    r.exit = ExitCode::infeasible;
  }
  write_manifest(cfg, r);
  return r;
}

inline StageResult stage_report(const Config& cfg) {
  StageResult r{"report", {}, {}, ExitCode::ok, nlohmann::json::object()};
  const auto report_path = cfg.output("optimize_report.json");
  const auto spectrum_path = cfg.output("best_spectrum.csv");
  const auto trace_path = cfg.output("ga_trace.csv");
  r.inputs = {report_path, spectrum_path, trace_path};
  nlohmann::json j;
  {
    std::ifstream in(report_path);
    if (!in) {
      throw ConfigError("cannot open " + report_path.string() + "; run optimize first");
    }
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(report_path.string() + ": " + e.what());
    }
  }
  const auto cell = cell_from_json(j.at("best").at("cell"));
  std::ifstream sin(spectrum_path);
  if (!sin) {
    throw ConfigError("cannot open " + spectrum_path.string());
  }
  const auto spec = acoustics::read_spectrum_csv(sin);
  const auto lm = load_material(cfg);
  const auto bare = acoustics::absorption_spectrum(cell, lm.material, spec.frequencies, false);
  std::vector<inverse::GenerationStats> trace;
  const auto table = csv::read_file(trace_path.string());
  for (const auto& row : table.rows) {
    trace.push_back({static_cast<int>(row.at(table.column("generation"))), row.at(table.column("best")),
                     row.at(table.column("mean"))});
  }
  const auto written = emit_report(cfg.output("report"),
                                   {{"optimized (steel-air backing)", spec.frequencies, spec.A},
                                    {"optimized (water backing)", spec.frequencies, bare.A}},
                                   cell, trace);
  r.outputs = written;
  write_manifest(cfg, r);
  return r;
}

inline StageResult stage_benchmark(const Config& cfg, int repetitions = 10) {
  StageResult r{"benchmark", {}, {}, ExitCode::ok, nlohmann::json::object()};
  const auto lm = load_material(cfg);
  r.inputs = lm.inputs;
  const auto path = cfg.output("model.json");
  r.inputs.push_back(path);
  const auto model = surrogate::read_model_file(path.string());
  const auto freqs = linear_grid(10.0, 10000.0, 20.0);
  const acoustics::CoatingSolver solver(lm.material, freqs, true);
  const auto cell = default_cell();
  volatile double sink = 0.0;
  const auto rep = run_benchmark([&] { sink = sink + model.spectrum(cell, freqs).back(); },
                                 [&] { sink = sink + solver.absorption(cell).back(); }, repetitions, freqs.size());
  r.outputs.push_back(cfg.output("benchmark.json"));
  write_text(r.outputs.back(), to_text(rep.to_json()));
  r.summary = {{"surrogate_median_s", rep.surrogate_median},
               {"solver_median_s", rep.solver_median},
               {"solver_over_surrogate", rep.speedup}};
  write_manifest(cfg, r);
  return r;
}

} // namespace alberich::pipeline
