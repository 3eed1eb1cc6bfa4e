#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noonqfi/channel_models.hpp"
#include "noonqfi/entanglement.hpp"

namespace noonqfi {

enum class ChannelFamily { dephasing, depolarization, spontaneous, lorentzian, gad };

std::string_view to_string(ChannelFamily family);
std::optional<ChannelFamily> parse_family(std::string_view name);

/// Rate keys each family requires, in canonical order.
const std::vector<std::string>& required_rates(ChannelFamily family);

struct ScenarioConfig {
  ChannelFamily channel = ChannelFamily::dephasing;
  int n = 1;
  double phi = 0.0;
  double t_max = 1.0;
  int steps = 2;
  std::map<std::string, double> rates;
  int M = 1;
  bool strict = false;

  ChannelModel model() const;
  std::vector<double> grid() const;
};

/// INI-style `key = value` lines, `#` comments, blank lines ignored.
/// Throws ConfigError naming the line (or the missing key).
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

struct SweepRow {
  double t = 0.0;
  double f = 0.0;
  double h = 0.0;
  double g = 0.0;
  std::optional<double> gamma;
  double qfi = 0.0;
  double qcrb = 0.0;  // +inf when unbounded
  double qfi_flow = 0.0;
  std::optional<double> concurrence;
  std::optional<double> nm_cumulative;
};

/// Throws PhysicalityError in strict mode on the first non-CP instant.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config);

inline constexpr std::string_view kCsvHeader =
    "t,f,h,g,gamma,qfi,qcrb,qfi_flow,concurrence,nm_cumulative";

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
/// Throws std::runtime_error when the file cannot be written.
void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

enum class Metric { qfi, qfi_flow, concurrence, nm_cumulative };

std::string_view to_string(Metric metric);

struct Curve {
  std::string label;
  std::vector<SweepRow> rows;
};

inline constexpr std::string_view kTimeAxisLabel = "Time = δ₁t";

/// Static SVG line chart of `metric` against t, one polyline per curve.
void render_plot(const std::vector<Curve>& curves, Metric metric, const std::string& title,
                 std::ostream& out);
void render_plot(const std::vector<Curve>& curves, Metric metric, const std::string& title,
                 const std::filesystem::path& path);

struct PhysicalityReport {
  bool clean = true;
  double min_eigenvalue = 0.0;
  double t_at_min = 0.0;
  std::vector<Interval> violations;
  std::size_t samples = 0;
};

inline constexpr double kCpTolerance = 1e-9;

PhysicalityReport validate(const ScenarioConfig& config);
void print_report(const PhysicalityReport& report, std::ostream& out);

struct FigureCurve {
  std::string label;
  ScenarioConfig config;
};

struct FigurePreset {
  int id = 0;
  std::string title;
  Metric metric = Metric::qfi;
  std::vector<FigureCurve> curves;
};

inline constexpr int kFigureCount = 15;

/// Throws std::out_of_range unless 1 <= id <= 15.
FigurePreset figure_preset(int id);

/// 12 significant digits (%.12g); infinities as `inf`.
std::string format_number(double v);

}  // namespace noonqfi
