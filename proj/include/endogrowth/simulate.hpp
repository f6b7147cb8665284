#pragma once

// Two-track growth scenario: a baseline economy with neutral technology next
// to an identical economy that diverts fixed shares of labor and capital to
// research. Produces one TrajectoryPoint per period.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"
#include "endogrowth/model_core.hpp"

namespace endogrowth {

/// value(t) = initial + increment * (t - start_period)
struct LinearDriver {
  double initial = 0.0;
  double increment = 0.0;

  double at(long steps_from_start) const { return initial + increment * static_cast<double>(steps_from_start); }
};

struct ScenarioConfig {
  long periods = 1;
  long start_period = 1;
  LinearDriver patents{1.0, 1.0};
  LinearDriver labor{1.0, 1.0};
  LinearDriver capital{1.0, 1.0};
  LinearDriver human_capital{1.0, 0.0};
  double phi_labor = 0.0;
  double phi_capital = 0.0;
  ProductionMode mode = ProductionMode::Linear;
  ModelParams params{};

  /// Every violated constraint, so callers can report them all at once.
  std::vector<std::string> validation_errors() const {
    std::vector<std::string> errors;
    if (periods < 1) errors.push_back("periods must be >= 1");
    const auto finite_driver = [&](const LinearDriver& d, const char* name) {
      if (!std::isfinite(d.initial)) errors.push_back(std::string("drivers.") + name + ".initial must be finite");
      if (!std::isfinite(d.increment))
        errors.push_back(std::string("drivers.") + name + ".increment must be finite");
    };
    finite_driver(patents, "P");
    finite_driver(labor, "L");
    finite_driver(capital, "K");
    finite_driver(human_capital, "H");
    if (!(phi_labor >= 0.0 && phi_labor < 1.0)) errors.push_back("phi_L must lie in [0, 1)");
    if (!(phi_capital >= 0.0 && phi_capital < 1.0)) errors.push_back("phi_K must lie in [0, 1)");
    if (!(params.alpha > 0.0 && params.alpha < 1.0)) errors.push_back("alpha must lie in (0, 1)");
    if (!(params.delta >= 0.0)) errors.push_back("delta must be >= 0");
    if (!(params.g >= 0.0)) errors.push_back("g must be >= 0");
    return errors;
  }

  void validate() const {
    const auto errors = validation_errors();
    if (!errors.empty()) throw ParameterError("invalid scenario config: " + io::join(errors, "; "));
  }

  /// Sample-data preset: P_t = L_t = K_t = t, H_t = 0.998 + 0.002 t,
  /// 4% of capital and 0.025% of labor diverted to research.
  static ScenarioConfig appendix7() {
    ScenarioConfig c;
    c.periods = 100;
    c.start_period = 1;
    c.patents = {1.0, 1.0};
    c.labor = {1.0, 1.0};
    c.capital = {1.0, 1.0};
    c.human_capital = {1.0, 0.002};
    c.phi_labor = 0.00025;
    c.phi_capital = 0.04;
    c.mode = ProductionMode::Linear;
    return c;
  }
};

inline void to_json(nlohmann::json& j, const LinearDriver& d) {
  j = nlohmann::json{{"initial", d.initial}, {"increment", d.increment}};
}

inline void to_json(nlohmann::json& j, const ScenarioConfig& c) {
  j = nlohmann::json{{"periods", c.periods},
                     {"start_period", c.start_period},
                     {"drivers", {{"P", c.patents}, {"L", c.labor}, {"K", c.capital}, {"H", c.human_capital}}},
                     {"phi_L", c.phi_labor},
                     {"phi_K", c.phi_capital},
                     {"mode", std::string(to_string(c.mode))},
                     {"alpha", c.params.alpha},
                     {"delta", c.params.delta},
                     {"g", c.params.g}};
}

/// Parses a scenario document. Unknown keys and type mismatches are collected
/// together with range violations and thrown as one ParameterError.
inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  std::vector<std::string> errors;
  if (!j.is_object()) throw ParameterError("scenario config must be a JSON object");

  static const std::vector<std::string> known = {"periods", "start_period", "drivers", "phi_L",
                                                 "phi_K",   "mode",         "alpha",   "delta", "g"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      errors.push_back("unknown key '" + it.key() + "'");

  const auto read_number = [&](const nlohmann::json& node, const std::string& path, double& dst) {
    if (!node.is_number()) {
      errors.push_back(path + " must be a number");
      return;
    }
    dst = node.get<double>();
  };
  const auto read_integer = [&](const nlohmann::json& node, const std::string& path, long& dst) {
    if (!node.is_number_integer()) {
      errors.push_back(path + " must be an integer");
      return;
    }
    dst = node.get<long>();
  };

  if (j.contains("periods")) read_integer(j["periods"], "periods", c.periods);
  else errors.push_back("periods is required");
  if (j.contains("start_period")) read_integer(j["start_period"], "start_period", c.start_period);
  if (j.contains("drivers")) {
    const auto& drivers = j["drivers"];
    const auto read_driver = [&](const char* name, LinearDriver& d) {
      if (!drivers.contains(name)) {
        errors.push_back(std::string("drivers.") + name + " is required");
        return;
      }
      const auto& node = drivers[name];
      const std::string base = std::string("drivers.") + name;
      if (node.contains("initial")) read_number(node["initial"], base + ".initial", d.initial);
      else errors.push_back(base + ".initial is required");
      if (node.contains("increment")) read_number(node["increment"], base + ".increment", d.increment);
      else errors.push_back(base + ".increment is required");
    };
    if (!drivers.is_object()) {
      errors.push_back("drivers must be an object");
    } else {
      read_driver("P", c.patents);
      read_driver("L", c.labor);
      read_driver("K", c.capital);
      read_driver("H", c.human_capital);
    }
  } else {
    errors.push_back("drivers is required");
  }
  if (j.contains("phi_L")) read_number(j["phi_L"], "phi_L", c.phi_labor);
  if (j.contains("phi_K")) read_number(j["phi_K"], "phi_K", c.phi_capital);
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) errors.push_back("mode must be a string");
    else {
      try {
        c.mode = parse_production_mode(j["mode"].get<std::string>());
      } catch (const ParameterError& e) {
        errors.push_back(e.what());
      }
    }
  }
  if (j.contains("alpha")) read_number(j["alpha"], "alpha", c.params.alpha);
  if (j.contains("delta")) read_number(j["delta"], "delta", c.params.delta);
  if (j.contains("g")) read_number(j["g"], "g", c.params.g);

  for (auto& e : c.validation_errors()) errors.push_back(std::move(e));
  if (!errors.empty()) throw ParameterError("invalid scenario config: " + io::join(errors, "; "));
  return c;
}

struct TrajectoryPoint {
  long t = 0;
  double y_base = 0.0;
  double y_rd = 0.0;
  double effectiveness = 0.0;
  double A_rd = 1.0;
  double L_rd = 0.0;
  double K_rd = 0.0;
  double H = 0.0;

  bool operator==(const TrajectoryPoint&) const = default;
};

using Trajectory = std::vector<TrajectoryPoint>;

namespace detail {

inline TrajectoryPoint simulate_period(const ScenarioConfig& config, long t) {
  const long step = t - config.start_period;
  const double patents = config.patents.at(step);
  const double labor = config.labor.at(step);
  const double capital = config.capital.at(step);
  const double human = config.human_capital.at(step);

  if (!(labor > 0.0)) throw PeriodError(t, "labor driver must be positive, got " + io::format_double(labor));
  if (!(capital > 0.0)) throw PeriodError(t, "capital driver must be positive, got " + io::format_double(capital));
  if (!(patents >= 0.0)) throw PeriodError(t, "patent driver must be >= 0, got " + io::format_double(patents));
  if (config.mode == ProductionMode::Linear && !(human > 0.0))
    throw PeriodError(t, "human capital driver must be positive, got " + io::format_double(human));
  if (config.mode == ProductionMode::CobbDouglas && !(human >= 1.0))
    throw PeriodError(t, "human capital driver must be >= 1 in cobb-douglas mode, got " + io::format_double(human));

  const double alpha = config.params.alpha;
  DynamicOutput base;
  DynamicOutput rd;
  try {
    base = output_dynamic(0.0, labor, capital, human, 0.0, 0.0, alpha, config.mode);
    rd = output_dynamic(patents, labor, capital, human, config.phi_labor, config.phi_capital, alpha, config.mode);
  } catch (const std::exception& e) {
    throw PeriodError(t, e.what());
  }
  if (base.output == 0.0) throw PeriodError(t, "baseline output is zero; effectiveness undefined");

  TrajectoryPoint p;
  p.t = t;
  p.y_base = base.output;
  p.y_rd = rd.output;
  p.effectiveness = rd.output / base.output;
  p.A_rd = rd.technology;
  p.L_rd = rd.labor_production;
  p.K_rd = rd.capital_production;
  p.H = human;
  return p;
}

}  // namespace detail

inline Trajectory run_scenario(const ScenarioConfig& config) {
  config.validate();
  Trajectory trajectory;
  trajectory.reserve(static_cast<std::size_t>(config.periods));
  for (long i = 0; i < config.periods; ++i) trajectory.push_back(detail::simulate_period(config, config.start_period + i));
  return trajectory;
}

struct EffectivenessPoint {
  long t = 0;
  double value = 0.0;
};

inline std::vector<EffectivenessPoint> effectiveness_series(const Trajectory& trajectory) {
  if (trajectory.empty()) throw ParameterError("effectiveness_series: empty trajectory");
  std::vector<EffectivenessPoint> out;
  out.reserve(trajectory.size());
  for (const auto& p : trajectory) {
    if (p.y_base == 0.0) throw PeriodError(p.t, "baseline output is zero; effectiveness undefined");
    out.push_back({p.t, p.y_rd / p.y_base});
  }
  return out;
}

/// First period whose effectiveness reaches 1 after at least one period below 1.
inline std::optional<long> find_breakeven(const Trajectory& trajectory) {
  if (trajectory.empty()) throw ParameterError("find_breakeven: empty trajectory");
  bool in_deficit = false;
  for (const auto& p : trajectory) {
    if (p.effectiveness < 1.0) in_deficit = true;
    else if (in_deficit) return p.t;
  }
  return std::nullopt;
}

enum class ExportFormat { Csv, Json };

inline ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json") return ExportFormat::Json;
  throw ParameterError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

inline constexpr const char* kTrajectoryCsvHeader = "t,y_base,y_rd,effectiveness,A_rd,L_rd,K_rd,H";

inline nlohmann::json trajectory_to_json(const Trajectory& trajectory) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : trajectory)
    arr.push_back({{"t", p.t},
                   {"y_base", p.y_base},
                   {"y_rd", p.y_rd},
                   {"effectiveness", p.effectiveness},
                   {"A_rd", p.A_rd},
                   {"L_rd", p.L_rd},
                   {"K_rd", p.K_rd},
                   {"H", p.H}});
  return arr;
}

inline std::string export_trajectory(const Trajectory& trajectory, ExportFormat format) {
  if (trajectory.empty()) throw ParameterError("export_trajectory: empty trajectory");
  if (format == ExportFormat::Json) return trajectory_to_json(trajectory).dump(2) + "\n";
  std::string out = kTrajectoryCsvHeader;
  out += '\n';
  for (const auto& p : trajectory) {
    out += std::to_string(p.t);
    for (double v : {p.y_base, p.y_rd, p.effectiveness, p.A_rd, p.L_rd, p.K_rd, p.H}) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  return out;
}

inline void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory, ExportFormat format) {
  io::write_file(path, export_trajectory(trajectory, format));
}

inline Trajectory import_trajectory(std::string_view content, ExportFormat format) {
  Trajectory out;
  if (format == ExportFormat::Json) {
    const auto arr = nlohmann::json::parse(content);
    for (const auto& o : arr) {
      TrajectoryPoint p;
      p.t = o.at("t").get<long>();
      p.y_base = o.at("y_base").get<double>();
      p.y_rd = o.at("y_rd").get<double>();
      p.effectiveness = o.at("effectiveness").get<double>();
      p.A_rd = o.at("A_rd").get<double>();
      p.L_rd = o.at("L_rd").get<double>();
      p.K_rd = o.at("K_rd").get<double>();
      p.H = o.at("H").get<double>();
      out.push_back(p);
    }
    return out;
  }
  const auto table = io::parse_csv(content, "<trajectory>");
  if (io::join(table.header, ",") != kTrajectoryCsvHeader)
    throw SchemaError("trajectory CSV header must be '" + std::string(kTrajectoryCsvHeader) + "'");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto t = io::parse_long(row[0]);
    if (!t) throw RowError(table.source, table.line_numbers[r], "bad period '" + row[0] + "'");
    double values[7];
    for (int c = 0; c < 7; ++c) {
      const auto v = io::parse_double(row[static_cast<std::size_t>(c) + 1]);
      if (!v) throw RowError(table.source, table.line_numbers[r], "bad number '" + row[static_cast<std::size_t>(c) + 1] + "'");
      values[c] = *v;
    }
    out.push_back({*t, values[0], values[1], values[2], values[3], values[4], values[5], values[6]});
  }
  return out;
}

}  // namespace endogrowth
