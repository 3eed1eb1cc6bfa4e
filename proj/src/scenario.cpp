#include "noonqfi/scenario.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "noonqfi/errors.hpp"
#include "noonqfi/metrology.hpp"
#include "noonqfi/noon_state.hpp"

namespace noonqfi {

namespace {

constexpr std::array<std::string_view, 5> kFamilyNames = {"dephasing", "depolarization",
                                                          "spontaneous", "lorentzian", "gad"};

const std::set<std::string, std::less<>> kRateKeys = {"gamma1", "gamma2", "gamma0",
                                                      "lambda", "delta",  "omega"};
const std::set<std::string, std::less<>> kScalarKeys = {"channel", "n", "phi", "t_max",
                                                        "steps",   "M", "strict"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view value, int line) {
  const std::string text(value);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(line) + ": " + std::string(key) +
                          " expects a number, got '" + text + "'",
                      line);
  }
  return v;
}

int parse_int(std::string_view key, std::string_view value, int line) {
  const double v = parse_double(key, value, line);
  if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max()) {
    throw ConfigError("line " + std::to_string(line) + ": " + std::string(key) +
                          " expects an integer, got '" + std::string(value) + "'",
                      line);
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": " + std::string(key) +
                        " expects true/false, got '" + std::string(value) + "'",
                    line);
}

double rate(const ScenarioConfig& c, const char* key) { return c.rates.at(key); }

std::optional<double> field_value(const SweepRow& r, Metric m) {
  switch (m) {
    case Metric::qfi:
      return r.qfi;
    case Metric::qfi_flow:
      return r.qfi_flow;
    case Metric::concurrence:
      return r.concurrence;
    case Metric::nm_cumulative:
      return r.nm_cumulative;
  }
  return std::nullopt;
}

std::string y_label(Metric m) {
  switch (m) {
    case Metric::qfi:
      return "QFI";
    case Metric::qfi_flow:
      return "QFI flow";
    case Metric::concurrence:
      return "Concurrence";
    case Metric::nm_cumulative:
      return "I(t)";
  }
  return "";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

ScenarioConfig make_config(ChannelFamily family, int n, double t_max, int steps,
                           std::map<std::string, double> rates) {
  ScenarioConfig c;
  c.channel = family;
  c.n = n;
  c.t_max = t_max;
  c.steps = steps;
  c.rates = std::move(rates);
  return c;
}

}  // namespace

std::string_view to_string(ChannelFamily family) {
  return kFamilyNames[static_cast<std::size_t>(family)];
}

std::optional<ChannelFamily> parse_family(std::string_view name) {
  for (std::size_t k = 0; k < kFamilyNames.size(); ++k) {
    if (kFamilyNames[k] == name) return static_cast<ChannelFamily>(k);
  }
  return std::nullopt;
}

const std::vector<std::string>& required_rates(ChannelFamily family) {
  static const std::vector<std::string> dephasing = {"gamma1"};
  static const std::vector<std::string> two_rate = {"gamma1", "gamma2"};
  static const std::vector<std::string> lorentzian = {"gamma0", "lambda"};
  static const std::vector<std::string> gad = {"delta", "omega"};
  switch (family) {
    case ChannelFamily::dephasing:
      return dephasing;
    case ChannelFamily::depolarization:
    case ChannelFamily::spontaneous:
      return two_rate;
    case ChannelFamily::lorentzian:
      return lorentzian;
    case ChannelFamily::gad:
      return gad;
  }
  return dephasing;
}

ChannelModel ScenarioConfig::model() const {
  switch (channel) {
    case ChannelFamily::dephasing:
      return Dephasing{rate(*this, "gamma1")};
    case ChannelFamily::depolarization:
      return Depolarization{rate(*this, "gamma1"), rate(*this, "gamma2")};
    case ChannelFamily::spontaneous:
      return SpontaneousEmission{rate(*this, "gamma1"), rate(*this, "gamma2")};
    case ChannelFamily::lorentzian:
      return LorentzianReservoir{rate(*this, "gamma0"), rate(*this, "lambda"), 0.0};
    case ChannelFamily::gad:
      return GeneralizedAmplitudeDamping{rate(*this, "delta"), rate(*this, "omega")};
  }
  throw DomainError("unknown channel family");
}

std::vector<double> ScenarioConfig::grid() const {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) g[k] = t_max * k / (steps - 1);
  return g;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    if (!kScalarKeys.contains(key) && !kRateKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'",
                        line_no);
    }
    if (!seen.emplace(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                            std::string(key) + "'",
                        line_no);
    }

    if (key == "channel") {
      const auto family = parse_family(value);
      if (!family) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown channel '" +
                              std::string(value) +
                              "' (dephasing, depolarization, spontaneous, lorentzian, gad)",
                          line_no);
      }
      c.channel = *family;
    } else if (key == "n") {
      c.n = parse_int(key, value, line_no);
      if (c.n < 1) throw ConfigError("line " + std::to_string(line_no) + ": n ≥ 1", line_no);
    } else if (key == "phi") {
      c.phi = parse_double(key, value, line_no);
    } else if (key == "t_max") {
      c.t_max = parse_double(key, value, line_no);
      if (!(c.t_max > 0.0)) {
        throw ConfigError("line " + std::to_string(line_no) + ": t_max > 0", line_no);
      }
    } else if (key == "steps") {
      c.steps = parse_int(key, value, line_no);
      if (c.steps < 2) {
        throw ConfigError("line " + std::to_string(line_no) + ": steps ≥ 2", line_no);
      }
    } else if (key == "M") {
      c.M = parse_int(key, value, line_no);
      if (c.M < 1) throw ConfigError("line " + std::to_string(line_no) + ": M ≥ 1", line_no);
    } else if (key == "strict") {
      c.strict = parse_bool(key, value, line_no);
    } else {
      const double v = parse_double(key, value, line_no);
      if (v < 0.0 && key != "omega") {
        throw ConfigError("line " + std::to_string(line_no) + ": " + std::string(key) +
                              " must be non-negative",
                          line_no);
      }
      c.rates.emplace(std::string(key), v);
    }
  }

  for (const char* key : {"channel", "n", "t_max", "steps"}) {
    if (!seen.contains(key)) throw ConfigError("missing required key '" + std::string(key) + "'", 0);
  }
  const auto& needed = required_rates(c.channel);
  for (const std::string& key : needed) {
    if (!c.rates.contains(key)) {
      throw ConfigError("channel '" + std::string(to_string(c.channel)) +
                            "' requires key '" + key + "'",
                        0);
    }
  }
  for (const auto& [key, v] : c.rates) {
    if (std::find(needed.begin(), needed.end(), key) == needed.end()) {
      throw ConfigError("key '" + key + "' does not apply to channel '" +
                            std::string(to_string(c.channel)) + "'",
                        0);
    }
  }
  if (c.channel == ChannelFamily::lorentzian && !(c.rates.at("lambda") > 0.0)) {
    throw ConfigError("lambda must be positive", 0);
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config) {
  const ChannelModel model = config.model();
  validate_model(model);
  const std::vector<double> grid = config.grid();
  const bool two_photon = config.n == 2;

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  double c0 = 0.0;
  double c_prev = 0.0;
  double variation = 0.0;

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    const ChannelParams p = eval_params(model, t);
    if (config.strict) {
      const CpCheck cp = is_completely_positive(p, kCpTolerance);
      if (!cp.completely_positive) {
        throw PhysicalityError("channel is not completely positive at t = " +
                                   format_number(t) + " (min Choi eigenvalue " +
                                   format_number(cp.min_eigenvalue) + ")",
                               t, cp.min_eigenvalue);
      }
    }
    const EvolvedNoonState state = evolve(config.n, config.phi, p);

    SweepRow row;
    row.t = t;
    row.f = p.f;
    row.h = p.h;
    row.g = p.g;
    switch (config.channel) {
      case ChannelFamily::lorentzian: {
        const DecayRateSample s = decay_rate(std::get<LorentzianReservoir>(model), t);
        if (!s.near_pole) row.gamma = s.gamma;
        break;
      }
      case ChannelFamily::gad:
        break;
      default:
        row.gamma = config.rates.at("gamma1");
    }
    row.qfi = qfi(state).F;
    row.qcrb = qcrb(row.qfi, config.M).delta_phi;
    row.qfi_flow = qfi_flow_fd(model, config.n, config.phi, t).I;
    if (two_photon) {
      const double c = concurrence_noon(state);
      if (k == 0) {
        c0 = c;
      } else {
        variation += std::abs(c - c_prev);
      }
      c_prev = c;
      row.concurrence = c;
      row.nm_cumulative = (c - c0) + variation;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return buf.data();
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) throw DomainError("no rows to emit");
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.f) << ',' << format_number(r.h) << ','
        << format_number(r.g) << ',' << opt(r.gamma) << ',' << format_number(r.qfi) << ','
        << format_number(r.qcrb) << ',' << format_number(r.qfi_flow) << ','
        << opt(r.concurrence) << ',' << opt(r.nm_cumulative) << '\n';
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  emit_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::qfi:
      return "qfi";
    case Metric::qfi_flow:
      return "qfi_flow";
    case Metric::concurrence:
      return "concurrence";
    case Metric::nm_cumulative:
      return "nm_cumulative";
  }
  return "";
}

void render_plot(const std::vector<Curve>& curves, Metric metric, const std::string& title,
                 std::ostream& out) {
  if (curves.empty() || std::all_of(curves.begin(), curves.end(),
                                    [](const Curve& c) { return c.rows.empty(); })) {
    throw DomainError("no rows to plot");
  }
  constexpr double width = 720, height = 480;
  constexpr double left = 80, right = 24, top = 40, bottom = 60;
  constexpr std::array<const char*, 4> colors = {"#c0392b", "#2c5aa0", "#27803b", "#8e44ad"};

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const Curve& c : curves) {
    for (const SweepRow& r : c.rows) {
      const auto y = field_value(r, metric);
      if (!y || !std::isfinite(*y)) continue;
      x_min = std::min(x_min, r.t);
      x_max = std::max(x_max, r.t);
      y_min = std::min(y_min, *y);
      y_max = std::max(y_max, *y);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) { return top + (y_max - y) / (y_max - y_min) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n"
      << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = x_min + (x_max - x_min) * k / 5.0;
    const double yv = y_min + (y_max - y_min) * k / 5.0;
    out << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(xv) << "</text>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(yv) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\" font-size=\"13\">" << kTimeAxisLabel << "</text>\n"
      << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << top + ph / 2 << ")\">" << y_label(metric)
      << "</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const char* color = colors[ci % colors.size()];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << points << "\"/>\n";
      }
      points.clear();
    };
    for (const SweepRow& r : curves[ci].rows) {
      const auto y = field_value(r, metric);
      if (!y || !std::isfinite(*y)) {
        flush();
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(r.t), sy(*y));
      points += buf;
    }
    flush();
    out << "<text x=\"" << left + pw - 8 << "\" y=\"" << top + 18 + 16 * ci
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
        << xml_escape(curves[ci].label) << "</text>\n";
  }
  out << "</svg>\n";
}

void render_plot(const std::vector<Curve>& curves, Metric metric, const std::string& title,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  render_plot(curves, metric, title, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

PhysicalityReport validate(const ScenarioConfig& config) {
  const ChannelModel model = config.model();
  validate_model(model);
  PhysicalityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  bool open = false;
  for (double t : config.grid()) {
    const CpCheck cp = is_completely_positive(eval_params(model, t), kCpTolerance);
    ++report.samples;
    if (cp.min_eigenvalue < report.min_eigenvalue) {
      report.min_eigenvalue = cp.min_eigenvalue;
      report.t_at_min = t;
    }
    if (!cp.completely_positive) {
      report.clean = false;
      if (!open) report.violations.push_back({t, t});
      report.violations.back().t_end = t;
      open = true;
    } else {
      open = false;
    }
  }
  return report;
}

void print_report(const PhysicalityReport& report, std::ostream& out) {
  out << "samples: " << report.samples << '\n'
      << "min Choi eigenvalue: " << format_number(report.min_eigenvalue) << " at t = "
      << format_number(report.t_at_min) << '\n';
  if (report.clean) {
    out << "status: completely positive on the whole grid\n";
    return;
  }
  out << "status: VIOLATION on " << report.violations.size() << " interval(s)\n";
  for (const Interval& iv : report.violations) {
    out << "  [" << format_number(iv.t_start) << ", " << format_number(iv.t_end) << "]\n";
  }
}

FigurePreset figure_preset(int id) {
  if (id < 1 || id > kFigureCount) {
    throw std::out_of_range("figure id must be in 1.." + std::to_string(kFigureCount));
  }
  using F = ChannelFamily;
  constexpr int steps_short = 2000;
  constexpr int steps_long = 10000;
  const std::map<std::string, double> weak = {{"gamma0", 1.0}, {"lambda", 3.0}};
  const std::map<std::string, double> strong = {{"gamma0", 1.0}, {"lambda", 0.1}};
  const std::map<std::string, double> gad_slow = {{"delta", 1.0}, {"omega", 0.1}};
  const std::map<std::string, double> gad_fast = {{"delta", 1.0}, {"omega", 10.0}};

  FigurePreset p;
  p.id = id;
  auto single = [&](Metric m, std::string title, std::string label, F family, int n,
                    double t_max, int steps, const std::map<std::string, double>& rates) {
    p.metric = m;
    p.title = std::move(title);
    p.curves.push_back({std::move(label), make_config(family, n, t_max, steps, rates)});
  };

  switch (id) {
    case 1:
      p.metric = Metric::qfi;
      p.title = "QFI, n = 8, Markovian channels";
      p.curves = {
          {"dephasing", make_config(F::dephasing, 8, 10.0, steps_short, {{"gamma1", 1.0}})},
          {"depolarization", make_config(F::depolarization, 8, 10.0, steps_short,
                                         {{"gamma1", 1.0}, {"gamma2", 1.0}})},
          {"spontaneous emission", make_config(F::spontaneous, 8, 10.0, steps_short,
                                               {{"gamma1", 1.0}, {"gamma2", 1.0}})},
      };
      break;
    case 2:
      single(Metric::qfi, "QFI, n = 8, weak coupling (λ/γ₀ = 3)", "weak", F::lorentzian, 8,
             10.0, steps_short, weak);
      break;
    case 3:
      single(Metric::qfi, "QFI, n = 8, strong coupling (λ/γ₀ = 0.1)", "strong", F::lorentzian,
             8, 50.0, steps_long, strong);
      break;
    case 4:
      single(Metric::qfi, "QFI, n = 8, generalized amplitude damping (ω = 0.1)", "ω = 0.1",
             F::gad, 8, 10.0, steps_short, gad_slow);
      break;
    case 5:
      single(Metric::qfi, "QFI, n = 8, generalized amplitude damping (ω = 10)", "ω = 10",
             F::gad, 8, 10.0, steps_short, gad_fast);
      break;
    case 6:
      single(Metric::qfi_flow, "QFI flow, n = 8, weak coupling (λ/γ₀ = 3)", "weak",
             F::lorentzian, 8, 10.0, steps_short, weak);
      break;
    case 7:
      single(Metric::qfi_flow, "QFI flow, n = 8, strong coupling (λ/γ₀ = 0.1)", "strong",
             F::lorentzian, 8, 50.0, steps_long, strong);
      break;
    case 8:
      single(Metric::qfi_flow, "QFI flow, n = 8, generalized amplitude damping (ω = 0.1)",
             "ω = 0.1", F::gad, 8, 10.0, steps_short, gad_slow);
      break;
    case 9:
      single(Metric::qfi_flow, "QFI flow, n = 8, generalized amplitude damping (ω = 10)",
             "ω = 10", F::gad, 8, 10.0, steps_short, gad_fast);
      break;
    case 10:
      single(Metric::concurrence, "Concurrence, n = 2, weak coupling (λ/γ₀ = 3)", "weak",
             F::lorentzian, 2, 10.0, steps_short, weak);
      break;
    case 11:
      single(Metric::concurrence, "Concurrence, n = 2, generalized amplitude damping (ω = 0.1)",
             "ω = 0.1", F::gad, 2, 10.0, steps_short, gad_slow);
      break;
    case 12:
      single(Metric::concurrence, "Concurrence, n = 2, strong coupling (λ/γ₀ = 0.1)", "strong",
             F::lorentzian, 2, 50.0, steps_long, strong);
      break;
    case 13:
      single(Metric::concurrence, "Concurrence, n = 2, generalized amplitude damping (ω = 10)",
             "ω = 10", F::gad, 2, 10.0, steps_short, gad_fast);
      break;
    case 14:
      p.metric = Metric::nm_cumulative;
      p.title = "Entanglement non-Markovianity, n = 2, Lorentzian reservoir";
      p.curves = {
          {"weak (λ/γ₀ = 3)", make_config(F::lorentzian, 2, 50.0, steps_long, weak)},
          {"strong (λ/γ₀ = 0.1)", make_config(F::lorentzian, 2, 50.0, steps_long, strong)},
      };
      break;
    case 15:
      p.metric = Metric::nm_cumulative;
      p.title = "Entanglement non-Markovianity, n = 2, generalized amplitude damping";
      p.curves = {
          {"ω = 0.1", make_config(F::gad, 2, 10.0, steps_short, gad_slow)},
          {"ω = 10", make_config(F::gad, 2, 10.0, steps_short, gad_fast)},
      };
      break;
  }
  return p;
}

}  // namespace noonqfi
