#pragma once

// Subcommand implementations for the `endogrowth` batch CLI. `run_cli` is
// the whole program minus process setup, so tests can drive it in-process.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "endogrowth/endogrowth.hpp"

namespace endogrowth::cli {

namespace fs = std::filesystem;

inline fs::path default_out_dir() {
  if (const char* env = std::getenv("ENDOGROWTH_OUT_DIR"); env && *env) return env;
  return ".";
}

inline std::vector<int> parse_years(const std::string& text) {
  std::vector<int> years;
  for (const auto& part : io::split_list(text)) {
    const auto dash = part.find(':');
    if (dash != std::string::npos) {
      // start:end[:step]
      const auto fields = io::split_list(part, ':');
      if (fields.size() < 2 || fields.size() > 3) throw ParameterError("bad year range '" + part + "'");
      const auto a = io::parse_long(fields[0]);
      const auto b = io::parse_long(fields[1]);
      const auto s = fields.size() == 3 ? io::parse_long(fields[2]) : std::optional<long>(5);
      if (!a || !b || !s || *s <= 0 || *b < *a) throw ParameterError("bad year range '" + part + "'");
      for (long y = *a; y <= *b; y += *s) years.push_back(static_cast<int>(y));
    } else {
      const auto y = io::parse_long(part);
      if (!y) throw ParameterError("bad year '" + part + "'");
      years.push_back(static_cast<int>(*y));
    }
  }
  if (years.empty()) throw ParameterError("--years is empty");
  return years;
}

// ---------------------------------------------------------------------------

struct BuildPanelArgs {
  std::string pwt, education, indicators, mapping, years = "1965:2005:5", out;
  bool interpolate = false;
  std::string savings_window = "forward";
  double g = 0.03;
};

inline void cmd_build_panel(const BuildPanelArgs& a, std::ostream& out, std::ostream& err) {
  pipeline::BuildOptions opt;
  opt.pwt = a.pwt;
  opt.education = a.education;
  opt.indicators = a.indicators;
  if (!a.mapping.empty()) opt.mapping_dir = fs::path(a.mapping);
  opt.years = parse_years(a.years);
  opt.derive.interpolate_rd = a.interpolate;
  opt.derive.params.g = a.g;
  if (a.savings_window == "forward") opt.derive.savings_window = pipeline::SavingsWindow::Forward;
  else if (a.savings_window == "trailing") opt.derive.savings_window = pipeline::SavingsWindow::Trailing;
  else throw ParameterError("--savings-window must be 'forward' or 'trailing'");

  const auto panel = pipeline::build_panel(opt);
  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  io::write_file(dir / "panel.csv", panel_to_csv(panel));
  auto prov = provenance_to_json(panel.provenance);
  prov["years"] = panel.interval_years;
  prov["roster"] = panel.roster();
  io::write_file(dir / "provenance.json", prov.dump(2) + "\n");

  out << panel.roster().size() << " countries retained\n";
  for (const auto& d : panel.provenance.dropped) out << "dropped: " << d.country << " (" << d.reason << ")\n";
  for (const auto& e : panel.provenance.exclusions) out << "excluded: " << e << "\n";
  for (const auto& w : panel.provenance.warnings) err << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config, preset, out, format = "csv";
};

inline void cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.config.empty() == a.preset.empty()) throw ParameterError("give exactly one of --config or --preset");
  ScenarioConfig config;
  if (!a.preset.empty()) {
    if (a.preset != "appendix7") throw ParameterError("unknown preset '" + a.preset + "' (available: appendix7)");
    config = ScenarioConfig::appendix7();
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(io::read_file(a.config));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParameterError(a.config + ": " + e.what());
    }
    config = scenario_from_json(j);
  }
  const auto format = parse_export_format(a.format);
  const auto trajectory = run_scenario(config);
  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  write_trajectory(dir / (format == ExportFormat::Csv ? "trajectory.csv" : "trajectory.json"),
                             trajectory, format);
  if (auto t = find_breakeven(trajectory)) out << "break-even at t=" << *t << "\n";
  else out << "break-even: none\n";
}

// ---------------------------------------------------------------------------

struct RegressArgs {
  std::string panel, dep, regressors, spec, label, out;
  bool no_intercept = false;
};

inline std::vector<econometrics::RegressionSpec> load_specs(const RegressArgs& a) {
  std::vector<econometrics::RegressionSpec> specs;
  auto from_json = [](const nlohmann::json& j, std::size_t index) {
    econometrics::RegressionSpec s;
    try {
      s.dependent = j.at("dependent").get<std::string>();
      s.regressors = j.at("regressors").get<std::vector<std::string>>();
      s.include_intercept = j.value("intercept", true);
      s.label = j.value("label", "Model " + std::to_string(index + 1));
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError("regression spec " + std::to_string(index + 1) + ": " + e.what());
    }
    return s;
  };
  if (!a.spec.empty()) {
    if (!a.dep.empty() || !a.regressors.empty()) throw ParameterError("--spec cannot be combined with --dep/--regressors");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(io::read_file(a.spec));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParameterError(a.spec + ": " + e.what());
    }
    if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) specs.push_back(from_json(j[i], i));
    } else {
      specs.push_back(from_json(j, 0));
    }
  } else {
    if (a.dep.empty() || a.regressors.empty()) throw ParameterError("give --dep and --regressors, or --spec");
    econometrics::RegressionSpec s;
    s.dependent = a.dep;
    s.regressors = io::split_list(a.regressors);
    s.include_intercept = !a.no_intercept;
    s.label = a.label.empty() ? "Model 1" : a.label;
    specs.push_back(std::move(s));
  }
  if (specs.empty()) throw ParameterError("no regression specs given");
  return specs;
}

inline void cmd_regress(const RegressArgs& a, std::ostream& out) {
  const auto specs = load_specs(a);
  const auto panel = read_panel(a.panel);
  std::vector<econometrics::RegressionResult> results;
  for (const auto& s : specs) results.push_back(econometrics::fit_pooled_ols(panel, s));

  std::string text;
  nlohmann::json models = nlohmann::json::array();
  for (const auto& r : results) {
    if (!text.empty()) text += "\n";
    text += econometrics::format_result_table(r);
    models.push_back(econometrics::result_to_json(r));
  }
  nlohmann::json doc = {{"models", models}};
  if (results.size() > 1) {
    const auto cmp = econometrics::compare_models(results);
    text += "\n" + econometrics::format_comparison(cmp);
    doc["comparison"] = {{"winner", cmp.winner}, {"tie", cmp.tie}};
  }
  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  io::write_file(dir / "regression.txt", text);
  io::write_file(dir / "regression.json", doc.dump(2) + "\n");
  for (const auto& r : results)
    out << r.label << ": BIC=" << econometrics::detail::fmt_stat(r.diagnostics.bic)
        << " AIC=" << econometrics::detail::fmt_stat(r.diagnostics.aic) << "\n";
}

// ---------------------------------------------------------------------------

struct ClusterArgs {
  std::string panel, matrix, features, outcome, out;
  std::optional<int> year;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  double tau = 2.0;
  bool standardize = true;
};

inline void cmd_cluster(const ClusterArgs& a, std::ostream& out) {
  if (a.panel.empty() == a.matrix.empty()) throw ParameterError("give exactly one of --panel or --matrix");
  clustering::FeatureMatrix raw;
  std::map<std::string, double> outcome;
  if (!a.panel.empty()) {
    if (a.features.empty()) throw ParameterError("--features is required with --panel");
    auto panel = read_panel(a.panel);
    if (a.year) panel = panel.cross_section(*a.year);
    raw = clustering::feature_matrix_from_panel(panel, io::split_list(a.features));
    if (!a.outcome.empty()) {
      if (!panel.has_column(a.outcome))
        throw ParameterError("unknown outcome '" + a.outcome + "'; available columns: " + io::join(panel.columns, ", "));
      const bool multi_year = panel.years().size() > 1;
      for (const auto& o : panel.observations)
        if (auto v = o.get(a.outcome)) outcome[multi_year ? o.country + " " + std::to_string(o.year) : o.country] = *v;
    }
  } else {
    raw = clustering::feature_matrix_from_csv(io::read_csv(a.matrix));
    if (!a.features.empty()) throw ParameterError("--features applies only to --panel");
    if (!a.outcome.empty()) throw ParameterError("--outcome applies only to --panel");
  }
  const auto matrix = a.standardize ? clustering::standardize(raw) : raw;
  clustering::KMeansOptions opt;
  opt.k = a.k;
  opt.seed = a.seed;
  opt.restarts = a.restarts;
  const auto model = clustering::kmeans_fit(matrix, opt);
  const auto anomalies = clustering::detect_anomalies(model, a.tau);

  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  io::write_file(dir / "assignments.csv", clustering::assignments_csv(model, anomalies));
  auto doc = clustering::model_to_json(model, matrix);
  nlohmann::json an = nlohmann::json::array();
  for (const auto& x : anomalies.anomalies)
    an.push_back({{"label", x.label}, {"cluster", x.cluster}, {"distance", x.distance},
                  {"cluster_rms_distance", x.cluster_rms_distance}});
  doc["anomalies"] = an;
  doc["tau"] = a.tau;
  io::write_file(dir / "cluster_model.json", doc.dump(2) + "\n");
  if (!outcome.empty()) {
    const auto report = clustering::cluster_report(model, matrix, outcome, a.outcome);
    io::write_file(dir / "cluster_report.txt", clustering::format_cluster_report(report));
    io::write_file(dir / "cluster_report.json", clustering::cluster_report_to_json(report).dump(2) + "\n");
  }

  out << model.k << " clusters, SSE=" << io::format_double(model.sse) << "\n";
  for (std::size_t c = 0; c < model.k; ++c) out << "cluster " << c << ": " << model.members(c).size() << " members\n";
  for (const auto& x : anomalies.anomalies)
    out << "anomaly: " << x.label << " (cluster " << x.cluster << ", distance " << io::format_double(x.distance)
        << " > " << io::format_double(a.tau) << " x rms " << io::format_double(x.cluster_rms_distance) << ")\n";
  if (anomalies.suggested_k) out << "consider k+1 (k=" << *anomalies.suggested_k << ")\n";
}

// ---------------------------------------------------------------------------

struct PlotArgs {
  std::string panel, x, y, out;
  std::optional<int> year;
  bool log = false;
};

struct PlotPoint {
  std::string country;
  int year;
  double x, y;
};

inline std::string scatter_svg(const std::vector<PlotPoint>& pts, const std::string& xname, const std::string& yname) {
  constexpr double W = 640, H = 480, M = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].x;
    y0 = y1 = pts[0].y;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  }
  auto f = [](double v) { return econometrics::detail::fmt("%.2f", v); };
  auto esc = [](std::string s) {
    std::string o;
    for (char c : s) {
      if (c == '&') o += "&amp;";
      else if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else o += c;
    }
    return o;
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << esc(xname) << "</text>\n";
  s << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">"
    << esc(yname) << "</text>\n";
  s << "<text x=\"" << M << "\" y=\"" << H - M + 18 << "\" font-size=\"10\">" << esc(io::format_double(x0)) << "</text>\n";
  s << "<text x=\"" << W - M << "\" y=\"" << H - M + 18 << "\" font-size=\"10\" text-anchor=\"end\">"
    << esc(io::format_double(x1)) << "</text>\n";
  s << "<text x=\"" << M - 5 << "\" y=\"" << H - M << "\" font-size=\"10\" text-anchor=\"end\">"
    << esc(io::format_double(y0)) << "</text>\n";
  s << "<text x=\"" << M - 5 << "\" y=\"" << M + 10 << "\" font-size=\"10\" text-anchor=\"end\">"
    << esc(io::format_double(y1)) << "</text>\n";
  for (const auto& p : pts) {
    const double px = M + (p.x - x0) / (x1 - x0) * (W - 2 * M);
    const double py = H - M - (p.y - y0) / (y1 - y0) * (H - 2 * M);
    s << "<circle cx=\"" << f(px) << "\" cy=\"" << f(py) << "\" r=\"3\" fill=\"steelblue\"><title>"
      << esc(p.country) << " " << p.year << "</title></circle>\n";
  }
  s << "</svg>\n";
  return s.str();
}

inline void cmd_plotdata(const PlotArgs& a, std::ostream& out, std::ostream& err) {
  auto panel = read_panel(a.panel);
  if (a.year) panel = panel.cross_section(*a.year);
  for (const auto& v : {a.x, a.y})
    if (!panel.observations.empty() && !panel.has_column(v))
      throw ParameterError("unknown variable '" + v + "'; available columns: " + io::join(panel.columns, ", "));
  const std::string xname = a.log ? "ln_" + a.x : a.x;
  const std::string yname = a.log ? "ln_" + a.y : a.y;
  std::vector<PlotPoint> pts;
  std::size_t missing = 0, nonpositive = 0;
  for (const auto& o : panel.observations) {
    auto x = o.get(a.x);
    auto y = o.get(a.y);
    if (!x || !y) {
      ++missing;
      continue;
    }
    if (a.log) {
      if (!(*x > 0.0) || !(*y > 0.0)) {
        ++nonpositive;
        continue;
      }
      pts.push_back({o.country, o.year, std::log(*x), std::log(*y)});
    } else {
      pts.push_back({o.country, o.year, *x, *y});
    }
  }
  std::string csv = "country,year," + io::quote_csv(xname) + "," + io::quote_csv(yname) + "\n";
  for (const auto& p : pts)
    csv += io::quote_csv(p.country) + "," + std::to_string(p.year) + "," + io::format_double(p.x) + "," +
           io::format_double(p.y) + "\n";
  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  io::write_file(dir / "plot.csv", csv);
  io::write_file(dir / "plot.svg", scatter_svg(pts, xname, yname));
  if (panel.observations.empty()) err << "warning: panel is empty; wrote empty plot data\n";
  if (nonpositive) err << "skipped " << nonpositive << " rows with nonpositive values under --log\n";
  if (missing) err << "skipped " << missing << " rows with missing values\n";
  out << pts.size() << " points written\n";
}

// ---------------------------------------------------------------------------

inline void cmd_export_mappings(const std::string& out_dir) {
  const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
  for (auto kind : {pipeline::SourceKind::Pwt, pipeline::SourceKind::Education, pipeline::SourceKind::Indicators})
    io::write_file(dir / (pipeline::to_string(kind) + ".v1.json"),
                   pipeline::schema_to_json(pipeline::default_schema(kind)).dump(2) + "\n");
}

// ---------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs one subcommand.
/// Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Endogenous growth model: simulation, panel building, regression and clustering"};
  app.name("endogrowth");
  app.require_subcommand(1);

  BuildPanelArgs bp;
  auto* build = app.add_subcommand("build-panel", "Merge source snapshots into the country-year panel");
  build->add_option("--pwt", bp.pwt, "PWT-like snapshot CSV")->required();
  build->add_option("--education", bp.education, "Education snapshot CSV")->required();
  build->add_option("--indicators", bp.indicators, "Development-indicators snapshot CSV")->required();
  build->add_option("--mapping", bp.mapping, "Directory with <kind>.v1.json column mappings");
  build->add_option("--years", bp.years, "Years to keep: list and/or start:end[:step]")->capture_default_str();
  build->add_flag("--interpolate", bp.interpolate, "Interpolate gdp_rd within country over short gaps");
  build->add_option("--savings-window", bp.savings_window, "forward|trailing I/Y window for s_k")->capture_default_str();
  build->add_option("--g", bp.g, "Technology trend rate in ln(n+g+delta)")->capture_default_str();
  build->add_option("--out", bp.out, "Output directory");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Run the two-track growth scenario");
  sim->add_option("--config", sa.config, "Scenario JSON file");
  sim->add_option("--preset", sa.preset, "Built-in scenario (appendix7)");
  sim->add_option("--format", sa.format, "csv|json")->capture_default_str();
  sim->add_option("--out", sa.out, "Output directory");

  RegressArgs ra;
  auto* reg = app.add_subcommand("regress", "Pooled OLS with the full diagnostic battery");
  reg->add_option("--panel", ra.panel, "Panel CSV")->required();
  reg->add_option("--dep", ra.dep, "Dependent variable");
  reg->add_option("--regressors", ra.regressors, "Comma-separated regressors");
  reg->add_option("--spec", ra.spec, "JSON spec file (object or array of models)");
  reg->add_option("--label", ra.label, "Model label");
  reg->add_flag("--no-intercept", ra.no_intercept, "Omit the constant");
  reg->add_option("--out", ra.out, "Output directory");

  ClusterArgs ca;
  int year = 0;
  auto* clu = app.add_subcommand("cluster", "K-means clustering with anomaly flags");
  clu->add_option("--panel", ca.panel, "Panel CSV");
  clu->add_option("--matrix", ca.matrix, "Feature matrix CSV (first column = label)");
  clu->add_option("--features", ca.features, "Comma-separated panel columns");
  auto* clu_year = clu->add_option("--year", year, "Restrict the panel to one year");
  clu->add_option("--k", ca.k, "Number of clusters")->capture_default_str();
  clu->add_option("--seed", ca.seed, "RNG seed")->capture_default_str();
  clu->add_option("--restarts", ca.restarts, "k-means++ restarts")->capture_default_str();
  clu->add_option("--tau", ca.tau, "Anomaly threshold in cluster RMS distances")->capture_default_str();
  clu->add_option("--outcome", ca.outcome, "Panel column summarised per cluster");
  clu->add_flag("--standardize,!--no-standardize", ca.standardize, "Z-score features (default on)");
  clu->add_option("--out", ca.out, "Output directory");

  PlotArgs pa;
  int plot_year = 0;
  auto* plot = app.add_subcommand("plotdata", "Emit scatter data and a minimal SVG");
  plot->add_option("--panel", pa.panel, "Panel CSV")->required();
  plot->add_option("--x", pa.x, "x variable")->required();
  plot->add_option("--y", pa.y, "y variable")->required();
  auto* plot_year_opt = plot->add_option("--year", plot_year, "Restrict to one year");
  plot->add_flag("--log", pa.log, "Natural-log both axes");
  plot->add_option("--out", pa.out, "Output directory");

  std::string mapping_out;
  auto* maps = app.add_subcommand("export-mappings", "Write the built-in column mappings");
  maps->add_option("--out", mapping_out, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) cmd_build_panel(bp, out, err);
    else if (*sim) cmd_simulate(sa, out);
    else if (*reg) cmd_regress(ra, out);
    else if (*clu) {
      if (clu_year->count()) ca.year = year;
      cmd_cluster(ca, out);
    } else if (*plot) {
      if (plot_year_opt->count()) pa.year = plot_year;
      cmd_plotdata(pa, out, err);
    } else if (*maps) cmd_export_mappings(mapping_out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace endogrowth::cli
