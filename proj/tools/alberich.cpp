// Command-line front end: one subcommand per pipeline stage.

#include "alberich/pipeline/stages.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace ap = alberich::pipeline;

namespace {

alberich::acoustics::UnitCell parse_cell(const std::vector<double>& v) {
  if (v.size() != alberich::acoustics::UnitCell::dimension) {
    throw alberich::ConfigError("--cell needs 10 values: r1 r2 D1 D2 B1 B2 B3 B4 h t (mm)");
  }
  std::array<double, alberich::acoustics::UnitCell::dimension> x{};
  std::copy(v.begin(), v.end(), x.begin());
  return alberich::acoustics::UnitCell::from_array(x);
}

void print_result(const ap::StageResult& r) {
  for (const auto& p : r.outputs) {
    std::cout << "wrote " << p.string() << '\n';
  }
  if (!r.summary.empty()) {
    std::cout << r.summary.dump() << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alberich coating design pipeline: master curves, acoustic sweeps, surrogate training, GA optimisation"};
  app.require_subcommand(1);

  std::string config_path = "alberich.json";
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON run configuration")->capture_default_str();
  app.add_option("--seed", seed, "override the manifest seed");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress lines");

  auto* mastercurve = app.add_subcommand("mastercurve", "build the polymer master curve from DMA sweeps");
  auto* sweep = app.add_subcommand("sweep", "R/T/A of one unit cell with and without steel backing");
  std::vector<double> cell_values;
  double step = 10.0;
  sweep->add_option("--cell", cell_values, "r1 r2 D1 D2 B1 B2 B3 B4 h t in mm")->expected(10);
  sweep->add_option("--step", step, "frequency step in Hz")->capture_default_str();
  auto* gen = app.add_subcommand("gen-dataset", "sample feasible designs and label them with the forward solver");
  auto* train = app.add_subcommand("train", "fit the MLP surrogate to the generated dataset");
  auto* optimize = app.add_subcommand("optimize", "GA search for the best-absorbing coating");
  auto* bench = app.add_subcommand("benchmark", "time surrogate and solver sweeps");
  int reps = 10;
  bench->add_option("--repetitions", reps, "timed sweeps per evaluator (>= 10)")->capture_default_str();
  auto* report = app.add_subcommand("report", "render SVG plots of the last optimisation");

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = ap::load_config(config_path);
    if (seed) {
      cfg.apply_seed(*seed);
    }
    std::ostream* log = quiet ? nullptr : &std::cerr;
    ap::StageResult r;
    if (*mastercurve) {
      r = ap::stage_mastercurve(cfg);
    } else if (*sweep) {
      r = ap::stage_sweep(cfg, cell_values.empty() ? ap::default_cell() : parse_cell(cell_values), step);
    } else if (*gen) {
      r = ap::stage_gen_dataset(cfg);
    } else if (*train) {
      r = ap::stage_train(cfg, log);
    } else if (*optimize) {
      r = ap::stage_optimize(cfg, log);
    } else if (*bench) {
      r = ap::stage_benchmark(cfg, reps);
    } else if (*report) {
      r = ap::stage_report(cfg);
    }
    print_result(r);
    if (r.exit == ap::ExitCode::infeasible) {
      std::cerr << "error: the best design violates the clearance constraints\n";
    }
    return static_cast<int>(r.exit);
  } catch (const alberich::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ap::ExitCode::config);
  } catch (const alberich::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ap::ExitCode::config);
  } catch (const alberich::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return static_cast<int>(ap::ExitCode::numerical);
  } catch (const alberich::InfeasibleGeometry& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return static_cast<int>(ap::ExitCode::infeasible);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
