#pragma once

// Source snapshot ingestion, merge/sanitisation and derived-variable
// construction for the country-year panel.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endogrowth/country_codes.hpp"
#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"
#include "endogrowth/model_core.hpp"
#include "endogrowth/panel.hpp"

namespace endogrowth::pipeline {

// Canonical variable names.
namespace var {
inline const std::string population = "P";
inline const std::string labor = "L";
inline const std::string output = "Y";
inline const std::string investment_share = "I/Y";
inline const std::string schooling = "h1";
inline const std::string patents = "Pa";
inline const std::string gdp_rd = "gdp_rd";
inline const std::string researcher_share = "researcher_share";

inline const std::string output_per_labor = "Y/L";
inline const std::string labor_growth = "n";
inline const std::string savings_rate = "s_k";
inline const std::string ideas_per_capita = "Pc";
inline const std::string ideas_per_hour = "Ph";
inline const std::string effective_human_capital = "Hd";
inline const std::string technology = "A";
inline const std::string ln_n_g_delta = "ln_n+g+delta";
}  // namespace var

inline const std::vector<std::string>& raw_variable_order() {
  static const std::vector<std::string> order = {var::population, var::labor,   var::output, var::investment_share,
                                                 var::schooling,  var::patents, var::gdp_rd, var::researcher_share};
  return order;
}

inline const std::vector<std::string>& default_required_variables() {
  static const std::vector<std::string> req = {var::population, var::labor,     var::output,
                                               var::investment_share, var::schooling, var::patents};
  return req;
}

inline const std::vector<int>& default_interval_years() {
  static const std::vector<int> years = {1965, 1970, 1975, 1980, 1985, 1990, 1995, 2000, 2005};
  return years;
}

inline constexpr double kHoursPerYear = 8760.0;

// ---------------------------------------------------------------------------
// Source schemas

enum class SourceKind { Pwt, Education, Indicators };

inline std::string to_string(SourceKind k) {
  switch (k) {
    case SourceKind::Pwt: return "pwt";
    case SourceKind::Education: return "education";
    case SourceKind::Indicators: return "indicators";
  }
  return "unknown";
}

inline SourceKind parse_source_kind(std::string_view s) {
  if (s == "pwt") return SourceKind::Pwt;
  if (s == "education") return SourceKind::Education;
  if (s == "indicators") return SourceKind::Indicators;
  throw ParameterError("unknown source kind '" + std::string(s) + "'");
}

struct ColumnMapping {
  std::string variable;
  double scale = 1.0;  // stored value = file value * scale
  bool optional = false;
};

/// Declared header layout of one source file. Every header column must be
/// the country column, the year column, a mapped column or an ignored one.
struct SourceSchema {
  int version = 1;
  SourceKind kind = SourceKind::Pwt;
  std::string country_column;
  std::string year_column = "year";
  std::map<std::string, ColumnMapping> columns;
  std::set<std::string> ignore;
  std::map<std::string, std::string> country_names;  // overrides / additions to the ISO table
  std::set<std::string> missing_tokens = {"", "..", "NA", "na", "n/a", "NaN"};
};

inline SourceSchema default_schema(SourceKind kind) {
  SourceSchema s;
  s.kind = kind;
  switch (kind) {
    case SourceKind::Pwt:
      s.country_column = "isocode";
      s.columns = {{"POP", {var::population, 1000.0, false}},
                   {"LF", {var::labor, 1000.0, false}},
                   {"tcgdp", {var::output, 1e6, false}},
                   {"ki", {var::investment_share, 0.01, false}}};
      s.ignore = {"country"};
      break;
    case SourceKind::Education:
      s.country_column = "WBcode";
      s.columns = {{"yr_sch", {var::schooling, 1.0, false}}};
      s.ignore = {"country", "BLcode", "yr_sch_pri", "yr_sch_sec", "yr_sch_ter"};
      break;
    case SourceKind::Indicators:
      s.country_column = "country_code";
      s.columns = {{"patent_applications_residents", {var::patents, 1.0, false}},
                   {"rd_expenditure_pct_gdp", {var::gdp_rd, 0.01, false}},
                   {"researchers_share", {var::researcher_share, 1.0, true}}};
      s.ignore = {"country_name"};
      break;
  }
  return s;
}

inline nlohmann::json schema_to_json(const SourceSchema& s) {
  nlohmann::json cols = nlohmann::json::object();
  for (const auto& [name, m] : s.columns)
    cols[name] = {{"variable", m.variable}, {"scale", m.scale}, {"optional", m.optional}};
  return {{"version", s.version},
          {"kind", to_string(s.kind)},
          {"country_column", s.country_column},
          {"year_column", s.year_column},
          {"columns", cols},
          {"ignore", s.ignore},
          {"country_names", s.country_names},
          {"missing_tokens", s.missing_tokens}};
}

inline SourceSchema schema_from_json(const nlohmann::json& j) {
  try {
    SourceSchema s;
    s.version = j.value("version", 1);
    if (s.version != 1) throw SchemaError("unsupported mapping version " + std::to_string(s.version));
    s.kind = parse_source_kind(j.at("kind").get<std::string>());
    s.country_column = j.at("country_column").get<std::string>();
    s.year_column = j.value("year_column", std::string("year"));
    for (const auto& [name, m] : j.at("columns").items()) {
      ColumnMapping cm;
      cm.variable = m.at("variable").get<std::string>();
      cm.scale = m.value("scale", 1.0);
      cm.optional = m.value("optional", false);
      s.columns[name] = cm;
    }
    if (j.contains("ignore")) s.ignore = j["ignore"].get<std::set<std::string>>();
    if (j.contains("country_names")) s.country_names = j["country_names"].get<std::map<std::string, std::string>>();
    if (j.contains("missing_tokens")) s.missing_tokens = j["missing_tokens"].get<std::set<std::string>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed mapping: ") + e.what());
  }
}

/// Loads `<dir>/<kind>.v1.json` for each source kind present, else built-in defaults.
inline std::map<SourceKind, SourceSchema> load_mappings(const std::optional<std::filesystem::path>& dir) {
  std::map<SourceKind, SourceSchema> out;
  for (auto kind : {SourceKind::Pwt, SourceKind::Education, SourceKind::Indicators}) {
    out[kind] = default_schema(kind);
    if (!dir) continue;
    const auto path = *dir / (to_string(kind) + ".v1.json");
    if (std::filesystem::exists(path)) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(io::read_file(path));
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string() + ": " + e.what());
      }
      auto schema = schema_from_json(j);
      if (schema.kind != kind) throw SchemaError(path.string() + ": kind does not match file name");
      out[kind] = std::move(schema);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Source tables

using CountryYear = std::pair<std::string, int>;

struct SourceTable {
  SourceKind kind = SourceKind::Pwt;
  std::string source;
  std::vector<std::string> variables;
  std::map<CountryYear, std::map<std::string, double>> rows;
  std::vector<std::string> excluded;

  std::set<std::string> countries() const {
    std::set<std::string> out;
    for (const auto& [key, _] : rows) out.insert(key.first);
    return out;
  }
};

inline std::string canonical_country(const std::string& key, const SourceSchema& schema) {
  if (auto it = schema.country_names.find(key); it != schema.country_names.end()) return it->second;
  if (auto name = countries::name_for_code(key)) return *name;
  return key;
}

inline SourceTable load_source(const io::CsvTable& csv, const SourceSchema& schema) {
  SourceTable table;
  table.kind = schema.kind;
  table.source = csv.source;

  std::optional<std::size_t> country_idx;
  std::optional<std::size_t> year_idx;
  std::vector<std::pair<std::size_t, ColumnMapping>> mapped;
  std::set<std::string> seen_headers;
  for (std::size_t c = 0; c < csv.header.size(); ++c) {
    const auto& h = csv.header[c];
    if (!seen_headers.insert(h).second) throw SchemaError(csv.source + ": duplicate column '" + h + "'");
    if (h == schema.country_column) country_idx = c;
    else if (h == schema.year_column) year_idx = c;
    else if (auto it = schema.columns.find(h); it != schema.columns.end()) mapped.emplace_back(c, it->second);
    else if (!schema.ignore.count(h))
      throw SchemaError(csv.source + ": unknown column '" + h + "' for " + to_string(schema.kind) + " schema");
  }
  if (!country_idx) throw SchemaError(csv.source + ": missing country column '" + schema.country_column + "'");
  if (!year_idx) throw SchemaError(csv.source + ": missing year column '" + schema.year_column + "'");
  for (const auto& [name, m] : schema.columns) {
    if (!m.optional && !seen_headers.count(name))
      throw SchemaError(csv.source + ": missing column '" + name + "' for " + to_string(schema.kind) + " schema");
  }
  for (const auto& [_, m] : mapped)
    if (std::find(table.variables.begin(), table.variables.end(), m.variable) == table.variables.end())
      table.variables.push_back(m.variable);

  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    const std::size_t line = csv.line_numbers[r];
    const auto year = io::parse_long(row[*year_idx]);
    if (!year) throw RowError(csv.source, line, "malformed year '" + row[*year_idx] + "'");
    const std::string country = canonical_country(row[*country_idx], schema);
    if (country.empty()) throw RowError(csv.source, line, "empty country key");
    CountryYear key{country, static_cast<int>(*year)};
    if (table.rows.count(key))
      throw RowError(csv.source, line, "duplicate (country, year) = (" + country + ", " + std::to_string(*year) + ")");
    auto& values = table.rows[key];
    for (const auto& [c, m] : mapped) {
      const auto& cell = row[c];
      if (schema.missing_tokens.count(cell)) continue;
      const auto v = io::parse_double(cell);
      if (!v) throw RowError(csv.source, line, "column '" + csv.header[c] + "': unparseable number '" + cell + "'");
      if (!std::isfinite(*v)) continue;
      values[m.variable] = *v * m.scale;
    }
  }
  return table;
}

inline SourceTable load_source(const std::filesystem::path& path, const SourceSchema& schema) {
  return load_source(io::read_csv(path), schema);
}

inline SourceTable load_source(const std::filesystem::path& path, SourceKind kind) {
  return load_source(path, default_schema(kind));
}

inline const std::vector<std::string>& default_exclusions() {
  static const std::vector<std::string> ex = {"China 2", "Zaire", "Reunion"};
  return ex;
}

/// Drops duplicate or defunct entities listed in `exclusions`.
inline SourceTable apply_exclusions(SourceTable table, const std::vector<std::string>& exclusions = default_exclusions()) {
  const std::set<std::string> drop(exclusions.begin(), exclusions.end());
  std::set<std::string> removed;
  for (auto it = table.rows.begin(); it != table.rows.end();) {
    if (drop.count(it->first.first)) {
      removed.insert(it->first.first);
      it = table.rows.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& r : removed) table.excluded.push_back(r);
  return table;
}

// ---------------------------------------------------------------------------
// Merge

struct MergeOptions {
  std::vector<std::string> required = default_required_variables();
  // Years on which the complete-case rule is enforced. Empty: the years at
  // which every source has a row for the country.
  std::vector<int> years;
};

/// Combines the sources on (country, year). A country survives only if it
/// appears in every source and carries every required variable in every
/// checked year; otherwise all of its rows are dropped. All years of a
/// surviving country are kept so lagged and windowed variables can be built.
inline PanelDataset merge_sources(const std::vector<SourceTable>& tables, const MergeOptions& options = {}) {
  if (tables.empty()) throw ParameterError("merge_sources: at least one table is required");

  // Sort tables by (kind, source) so the result and any conflict message do not
  // depend on argument order.
  std::vector<const SourceTable*> ordered;
  for (const auto& t : tables) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(), [](const SourceTable* a, const SourceTable* b) {
    if (a->kind != b->kind) return a->kind < b->kind;
    return a->source < b->source;
  });

  struct Cell {
    double value;
    std::string source;
  };
  std::map<CountryYear, std::map<std::string, Cell>> merged;
  std::map<CountryYear, std::size_t> presence;  // how many tables contain the row
  std::set<std::string> variables;
  Provenance provenance;
  for (const auto* t : ordered) {
    for (const auto& e : t->excluded) provenance.exclusions.push_back(e + " (" + to_string(t->kind) + ")");
    for (const auto& v : t->variables) variables.insert(v);
    for (const auto& [key, values] : t->rows) {
      ++presence[key];
      auto& row = merged[key];
      for (const auto& [name, value] : values) {
        auto it = row.find(name);
        if (it == row.end()) {
          row.emplace(name, Cell{value, t->source});
        } else if (it->second.value != value) {
          throw ConflictError("conflicting values for (" + key.first + ", " + std::to_string(key.second) + ", " + name +
                              "): " + io::format_double(it->second.value) + " from " + it->second.source + " vs " +
                              io::format_double(value) + " from " + t->source);
        }
      }
    }
  }

  std::map<std::string, std::vector<int>> years_by_country;
  for (const auto& [key, _] : merged) years_by_country[key.first].push_back(key.second);

  std::set<std::string> keep;
  for (const auto& [country, years] : years_by_country) {
    std::string reason;
    for (const auto* t : ordered) {
      bool any = false;
      for (int y : years)
        if (t->rows.count({country, y})) {
          any = true;
          break;
        }
      if (!any) {
        reason = "absent from " + to_string(t->kind) + " source";
        break;
      }
    }
    std::vector<int> checked;
    if (reason.empty()) {
      if (options.years.empty()) {
        for (int y : years)
          if (presence[{country, y}] == ordered.size()) checked.push_back(y);
        if (checked.empty()) reason = "no year present in every source";
      } else {
        checked = options.years;
      }
    }
    for (int y : checked) {
      if (!reason.empty()) break;
      auto it = merged.find({country, y});
      if (it == merged.end() || presence[{country, y}] != ordered.size()) {
        reason = "missing row for " + std::to_string(y);
        break;
      }
      for (const auto& req : options.required) {
        if (!it->second.count(req)) {
          reason = "missing " + req + " in " + std::to_string(y);
          break;
        }
      }
    }
    if (reason.empty()) keep.insert(country);
    else provenance.dropped.push_back({country, reason});
  }

  PanelDataset panel;
  panel.provenance = std::move(provenance);
  panel.interval_years = options.years;
  for (const auto& v : raw_variable_order())
    if (variables.count(v)) panel.add_column(v);
  for (const auto& v : variables) panel.add_column(v);  // any extra mapped variables, alphabetical

  for (const auto& [key, row] : merged) {
    if (!keep.count(key.first)) continue;
    Observation o;
    o.country = key.first;
    o.year = key.second;
    for (const auto& [name, cell] : row) o.values[name] = cell.value;
    panel.observations.push_back(std::move(o));
  }
  panel.sort();
  return panel;
}

// ---------------------------------------------------------------------------
// Interval filter

inline PanelDataset filter_intervals(const PanelDataset& panel, const std::vector<int>& years) {
  if (years.empty()) throw ParameterError("filter_intervals: year list is empty");
  if (!std::is_sorted(years.begin(), years.end()) ||
      std::adjacent_find(years.begin(), years.end()) != years.end())
    throw ParameterError("filter_intervals: years must be strictly ascending");
  const std::set<int> wanted(years.begin(), years.end());
  PanelDataset out;
  out.columns = panel.columns;
  out.provenance = panel.provenance;
  out.interval_years = years;
  for (const auto& o : panel.observations)
    if (wanted.count(o.year)) out.observations.push_back(o);
  if (out.observations.empty() && !panel.observations.empty())
    out.provenance.warnings.push_back("filter_intervals: none of the requested years are present; panel is empty");
  return out;
}

// ---------------------------------------------------------------------------
// Derived variables

enum class SavingsWindow {
  Forward,   // I/Y averaged over [t, t+4]
  Trailing,  // I/Y averaged over [t-4, t]
};

struct DeriveOptions {
  ModelParams params{};
  SavingsWindow savings_window = SavingsWindow::Forward;
  int window_years = 5;
  int growth_lag_years = 5;
  bool interpolate_rd = false;
  int interpolation_max_span = 15;  // years between the bracketing known values
  // Complete-case mode: rows without every listed variable are removed.
  std::vector<std::string> required;
};

inline const std::vector<std::string>& derived_variable_order() {
  static const std::vector<std::string> order = {
      var::output_per_labor, var::labor_growth, var::savings_rate, var::ideas_per_capita,
      var::ideas_per_hour,   var::effective_human_capital, var::technology};
  return order;
}

inline const std::vector<std::string>& log_variable_sources() {
  static const std::vector<std::string> order = {
      var::population,       var::labor,          var::output,         var::output_per_labor,
      var::schooling,        var::savings_rate,   var::ideas_per_capita, var::ideas_per_hour,
      var::effective_human_capital, var::technology, var::patents,      var::gdp_rd};
  return order;
}

namespace detail {

inline void interpolate_rd(std::vector<Observation*>& rows, const std::string& country, int max_span,
                           Provenance& provenance) {
  std::vector<std::pair<int, double>> known;
  for (auto* o : rows)
    if (auto v = o->get(var::gdp_rd)) known.emplace_back(o->year, *v);
  if (known.size() < 2) return;
  for (auto* o : rows) {
    if (o->has(var::gdp_rd)) continue;
    auto after = std::lower_bound(known.begin(), known.end(), std::make_pair(o->year, -HUGE_VAL));
    if (after == known.begin() || after == known.end()) continue;
    auto before = std::prev(after);
    if (after->first - before->first > max_span) continue;
    const double w = static_cast<double>(o->year - before->first) / static_cast<double>(after->first - before->first);
    const double value = before->second + w * (after->second - before->second);
    o->values[var::gdp_rd] = value;
    o->flags.insert("interpolated:" + var::gdp_rd);
    provenance.interpolations.push_back({country, o->year, var::gdp_rd, value});
  }
}

}  // namespace detail

/// Adds Y/L, n, s_k, Pc, Ph, Hd, A and the ln_ transforms. A field is only
/// written when all of its inputs exist and are in the formula's domain;
/// otherwise the observation gets a flag naming the field.
inline PanelDataset derive_variables(const PanelDataset& input, const DeriveOptions& options = {}) {
  options.params.validate();
  PanelDataset panel = input;
  panel.sort();

  std::map<std::string, std::vector<Observation*>> by_country;
  for (auto& o : panel.observations) by_country[o.country].push_back(&o);

  if (options.interpolate_rd) {
    for (auto& [country, rows] : by_country)
      detail::interpolate_rd(rows, country, options.interpolation_max_span, panel.provenance);
    panel.provenance.notes.push_back("gdp_rd linearly interpolated within country over gaps spanning <= " +
                                     std::to_string(options.interpolation_max_span) + " years");
  }

  const double g_plus_delta = options.params.g + options.params.delta;

  for (auto& [country, rows] : by_country) {
    std::map<int, const Observation*> by_year;
    for (const auto* o : rows) by_year[o->year] = o;

    for (auto* o : rows) {
      auto& v = o->values;
      const auto L = o->get(var::labor);
      const auto Y = o->get(var::output);
      const auto Pa = o->get(var::patents);
      const auto h1 = o->get(var::schooling);
      const auto rd = o->get(var::gdp_rd);

      if (L && Y && *L > 0.0) v[var::output_per_labor] = *Y / *L;

      if (L) {
        auto lag = by_year.find(o->year - options.growth_lag_years);
        if (lag != by_year.end() && lag->second->get(var::labor) && *lag->second->get(var::labor) > 0.0 && *L > 0.0) {
          v[var::labor_growth] =
              std::pow(*L / *lag->second->get(var::labor), 1.0 / static_cast<double>(options.growth_lag_years)) - 1.0;
        } else {
          o->flags.insert("missing_lag:" + var::labor_growth);
        }
      }

      {
        const int lo = options.savings_window == SavingsWindow::Forward ? o->year : o->year - options.window_years + 1;
        const int hi = lo + options.window_years - 1;
        double sum = 0.0;
        int count = 0;
        for (auto it = by_year.lower_bound(lo); it != by_year.end() && it->first <= hi; ++it) {
          if (auto s = it->second->get(var::investment_share)) {
            sum += *s;
            ++count;
          }
        }
        if (count > 0) v[var::savings_rate] = sum / count;
      }

      if (Pa && L && *L > 0.0) v[var::ideas_per_capita] = *Pa / *L;
      if (Pa) v[var::ideas_per_hour] = *Pa / kHoursPerYear;

      if (h1) {
        if (*h1 >= 1.0) v[var::effective_human_capital] = effective_human_capital(*h1);
        else o->flags.insert("domain:" + var::effective_human_capital);
      }

      if (Pa && L && Y && h1 && rd && *L > 0.0 && *Pa >= 0.0 && *rd >= 0.0 && *Y >= 0.0 && *h1 >= 0.0) {
        const auto share = o->get(var::researcher_share);
        const double labor_research = *L * (share ? *share : *rd);
        const double capital_research = *Y * *rd;
        if (labor_research >= 0.0) v[var::technology] = technology_a3(*Pa, labor_research, capital_research, *h1, *L);
      }
    }
  }

  for (auto& o : panel.observations) {
    for (const auto& name : log_variable_sources()) {
      auto x = o.get(name);
      if (!x) continue;
      if (*x > 0.0) o.values["ln_" + name] = std::log(*x);
      else o.flags.insert("nonpositive:ln_" + name);
    }
    if (auto n = o.get(var::labor_growth)) {
      const double arg = *n + g_plus_delta;
      if (arg > 0.0) o.values[var::ln_n_g_delta] = std::log(arg);
      else o.flags.insert("nonpositive:" + var::ln_n_g_delta);
    }
  }

  std::set<std::string> present;
  for (const auto& o : panel.observations)
    for (const auto& [name, _] : o.values) present.insert(name);
  for (const auto& name : derived_variable_order())
    if (present.count(name)) panel.add_column(name);
  for (const auto& name : log_variable_sources())
    if (present.count("ln_" + name)) panel.add_column("ln_" + name);
  if (present.count(var::ln_n_g_delta)) panel.add_column(var::ln_n_g_delta);

  if (!options.required.empty()) {
    std::vector<Observation> kept;
    for (auto& o : panel.observations) {
      std::vector<std::string> missing;
      for (const auto& r : options.required)
        if (!o.has(r) || !std::isfinite(*o.get(r))) missing.push_back(r);
      if (missing.empty()) kept.push_back(std::move(o));
      else
        panel.provenance.notes.push_back("dropped row (" + o.country + ", " + std::to_string(o.year) +
                                         "): missing " + io::join(missing, ", "));
    }
    panel.observations = std::move(kept);
  }

  panel.provenance.notes.push_back("alpha=" + io::format_double(options.params.alpha) +
                                   " delta=" + io::format_double(options.params.delta) +
                                   " g=" + io::format_double(options.params.g));
  panel.provenance.notes.push_back(std::string("A research inputs: L_research = L x researcher_share (else L x gdp_rd), "
                                               "K_research = Y x gdp_rd; s_k window: ") +
                                   (options.savings_window == SavingsWindow::Forward ? "forward" : "trailing") + " " +
                                   std::to_string(options.window_years) + " years");
  return panel;
}

// ---------------------------------------------------------------------------
// Synthetic sample panel

struct SeriesDriver {
  double initial = 0.0;
  double increment = 0.0;
};

struct SampleConfig {
  std::vector<std::string> countries = {"Sample"};
  int start_year = 1;
  int periods = 1;
  int step_years = 1;
  std::map<std::string, SeriesDriver> variables;
  double country_spread = 0.0;  // country i scales every series by (1 + spread * i)

  static SampleConfig appendix7() {
    SampleConfig c;
    c.periods = 100;
    c.variables = {{"P", {1.0, 1.0}}, {"L", {1.0, 1.0}}, {"K", {1.0, 1.0}}, {"H", {1.0, 0.002}}};
    return c;
  }
};

/// Deterministic panel of linearly driven series, for demos and tests.
inline PanelDataset generate_sample_panel(const SampleConfig& config) {
  if (config.periods < 1) throw ParameterError("sample panel: periods must be >= 1");
  if (config.step_years < 1) throw ParameterError("sample panel: step_years must be >= 1");
  if (config.countries.empty()) throw ParameterError("sample panel: at least one country is required");
  PanelDataset panel;
  for (const auto& [name, _] : config.variables) panel.add_column(name);
  for (std::size_t i = 0; i < config.countries.size(); ++i) {
    const double scale = 1.0 + config.country_spread * static_cast<double>(i);
    for (int p = 0; p < config.periods; ++p) {
      Observation o;
      o.country = config.countries[i];
      o.year = config.start_year + p * config.step_years;
      for (const auto& [name, d] : config.variables) o.values[name] = scale * (d.initial + d.increment * p);
      panel.observations.push_back(std::move(o));
    }
  }
  panel.sort();
  panel.interval_years = panel.years();
  return panel;
}

// ---------------------------------------------------------------------------
// End-to-end build

struct BuildOptions {
  std::filesystem::path pwt;
  std::filesystem::path education;
  std::filesystem::path indicators;
  std::optional<std::filesystem::path> mapping_dir;
  std::vector<std::string> exclusions = default_exclusions();
  std::vector<int> years = default_interval_years();
  DeriveOptions derive{};
};

/// load -> exclude -> merge -> derive -> keep interval years.
inline PanelDataset build_panel(const BuildOptions& options) {
  const auto schemas = load_mappings(options.mapping_dir);
  std::vector<SourceTable> tables;
  tables.push_back(apply_exclusions(load_source(options.pwt, schemas.at(SourceKind::Pwt)), options.exclusions));
  tables.push_back(
      apply_exclusions(load_source(options.education, schemas.at(SourceKind::Education)), options.exclusions));
  tables.push_back(
      apply_exclusions(load_source(options.indicators, schemas.at(SourceKind::Indicators)), options.exclusions));
  MergeOptions merge;
  merge.years = options.years;
  auto merged = merge_sources(tables, merge);
  auto derived = derive_variables(merged, options.derive);
  return filter_intervals(derived, options.years);
}

}  // namespace endogrowth::pipeline
