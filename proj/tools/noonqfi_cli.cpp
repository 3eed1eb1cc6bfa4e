// noonqfi: sweep, figure presets, physicality validation, and reference bounds.
//
// Exit codes: 0 success, 1 usage/config/I-O error, 2 physicality violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "noonqfi/errors.hpp"
#include "noonqfi/metrology.hpp"
#include "noonqfi/scenario.hpp"

namespace fs = std::filesystem;
using namespace noonqfi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPhysicality = 2;

int run_sweep_command(const std::string& config_path, const std::string& out_path, bool strict) {
  ScenarioConfig config = load_config(config_path);
  config.strict = config.strict || strict;
  const auto rows = run_sweep(config);
  if (out_path.empty() || out_path == "-") {
    emit_csv(rows, std::cout);
  } else {
    emit_csv(rows, fs::path(out_path));
  }
  return kExitOk;
}

int run_figure_command(int id, const std::string& out_dir) {
  const FigurePreset preset = figure_preset(id);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  std::vector<Curve> curves;
  for (std::size_t k = 0; k < preset.curves.size(); ++k) {
    const FigureCurve& fc = preset.curves[k];
    Curve curve{fc.label, run_sweep(fc.config)};
    const fs::path csv = dir / ("fig" + std::to_string(id) + "_" + std::to_string(k + 1) + ".csv");
    emit_csv(curve.rows, csv);
    std::cout << "curve " << k + 1 << " (" << fc.label << "): " << to_string(fc.config.channel)
              << ", n = " << fc.config.n << ", t in [0, " << format_number(fc.config.t_max)
              << "], " << fc.config.steps << " samples -> " << csv.string() << '\n';
    if (preset.metric == Metric::nm_cumulative && curve.rows.back().nm_cumulative) {
      std::cout << "  I^(E) over [0, " << format_number(fc.config.t_max)
                << "] = " << format_number(*curve.rows.back().nm_cumulative) << '\n';
    }
    curves.push_back(std::move(curve));
  }
  const fs::path svg = dir / ("fig" + std::to_string(id) + ".svg");
  render_plot(curves, preset.metric, preset.title, svg);
  std::cout << "figure " << id << " (" << to_string(preset.metric) << "): " << svg.string()
            << '\n';
  return kExitOk;
}

int run_validate_command(const std::string& config_path) {
  const ScenarioConfig config = load_config(config_path);
  const PhysicalityReport report = validate(config);
  print_report(report, std::cout);
  return report.clean ? kExitOk : kExitPhysicality;
}

int run_bounds_command(int n) {
  const ReferenceBounds b = reference_bounds(n);
  std::cout << "n = " << n << '\n'
            << "shot-noise limit: " << format_number(b.shot_noise) << '\n'
            << "Heisenberg limit: " << format_number(b.heisenberg) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N00N-state phase sensitivity under decoherence"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  bool strict = false;
  auto* sweep = app.add_subcommand("sweep", "time sweep of one scenario, CSV output");
  sweep->add_option("--config", config_path, "scenario file (key = value)")->required();
  sweep->add_option("--out", out_path, "CSV destination (default: stdout)");
  sweep->add_flag("--strict", strict, "abort with exit code 2 on a non-CP instant");

  int figure_id = 0;
  std::string out_dir = ".";
  auto* figure = app.add_subcommand("figure", "reproduce a figure preset (1-15)");
  figure->add_option("id", figure_id, "figure number")->required()->check(CLI::Range(1, 15));
  figure->add_option("--out", out_dir, "output directory");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "complete-positivity scan of a scenario");
  validate_cmd->add_option("--config", validate_path, "scenario file")->required();

  int bounds_n = 0;
  auto* bounds = app.add_subcommand("bounds", "shot-noise and Heisenberg limits");
  bounds->add_option("--n", bounds_n, "photon number")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) return run_sweep_command(config_path, out_path, strict);
    if (*figure) return run_figure_command(figure_id, out_dir);
    if (*validate_cmd) return run_validate_command(validate_path);
    if (*bounds) return run_bounds_command(bounds_n);
  } catch (const PhysicalityError& e) {
    std::cerr << "physicality violation: " << e.what() << '\n';
    return kExitPhysicality;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
