#pragma once

// Country-year panel container and its canonical CSV form
// (`country,year,<column...>`, empty cell = missing).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"

namespace endogrowth {

struct Observation {
  std::string country;
  int year = 0;
  std::map<std::string, double> values;
  std::set<std::string> flags;

  std::optional<double> get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
  bool has(const std::string& name) const { return values.count(name) != 0; }
  bool has_all(const std::vector<std::string>& names) const {
    return std::all_of(names.begin(), names.end(), [&](const std::string& n) {
      auto it = values.find(n);
      return it != values.end() && std::isfinite(it->second);
    });
  }
};

struct DroppedCountry {
  std::string country;
  std::string reason;
};

struct Interpolation {
  std::string country;
  int year = 0;
  std::string variable;
  double value = 0.0;
};

/// Record of every sanitisation step applied while building the panel.
struct Provenance {
  std::vector<std::string> exclusions;  // entities removed by the exclusion list
  std::vector<DroppedCountry> dropped;  // countries removed by the complete-case rule
  std::vector<Interpolation> interpolations;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
};

inline nlohmann::json provenance_to_json(const Provenance& p) {
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& d : p.dropped) dropped.push_back({{"country", d.country}, {"reason", d.reason}});
  nlohmann::json interp = nlohmann::json::array();
  for (const auto& i : p.interpolations)
    interp.push_back({{"country", i.country}, {"year", i.year}, {"variable", i.variable}, {"value", i.value}});
  return {{"exclusions", p.exclusions},
          {"dropped_countries", dropped},
          {"interpolations", interp},
          {"notes", p.notes},
          {"warnings", p.warnings}};
}

struct PanelDataset {
  std::vector<Observation> observations;
  std::vector<std::string> columns;  // value columns in output order
  std::vector<int> interval_years;
  Provenance provenance;

  std::vector<std::string> roster() const {
    std::set<std::string> names;
    for (const auto& o : observations) names.insert(o.country);
    return {names.begin(), names.end()};
  }

  bool has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
  }

  void add_column(const std::string& name) {
    if (!has_column(name)) columns.push_back(name);
  }

  void sort() {
    std::stable_sort(observations.begin(), observations.end(), [](const Observation& a, const Observation& b) {
      if (a.country != b.country) return a.country < b.country;
      return a.year < b.year;
    });
  }

  std::vector<int> years() const {
    std::set<int> ys;
    for (const auto& o : observations) ys.insert(o.year);
    return {ys.begin(), ys.end()};
  }

  /// Observations of a single year, in country order.
  PanelDataset cross_section(int year) const {
    PanelDataset out;
    out.columns = columns;
    out.interval_years = {year};
    out.provenance = provenance;
    for (const auto& o : observations)
      if (o.year == year) out.observations.push_back(o);
    out.sort();
    return out;
  }
};

inline std::string panel_to_csv(const PanelDataset& panel) {
  std::string out = "country,year";
  for (const auto& c : panel.columns) out += "," + io::quote_csv(c);
  out += '\n';
  for (const auto& o : panel.observations) {
    out += io::quote_csv(o.country);
    out += ',';
    out += std::to_string(o.year);
    for (const auto& c : panel.columns) {
      out += ',';
      if (auto v = o.get(c)) out += io::format_double(*v);
    }
    out += '\n';
  }
  return out;
}

inline PanelDataset panel_from_csv(const io::CsvTable& table) {
  if (table.header.size() < 2 || table.header[0] != "country" || table.header[1] != "year")
    throw SchemaError(table.source + ": panel CSV must start with columns 'country,year'");
  PanelDataset panel;
  panel.columns.assign(table.header.begin() + 2, table.header.end());
  std::set<std::pair<std::string, int>> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    Observation o;
    o.country = row[0];
    const auto year = io::parse_long(row[1]);
    if (!year) throw RowError(table.source, table.line_numbers[r], "malformed year '" + row[1] + "'");
    o.year = static_cast<int>(*year);
    if (!seen.insert({o.country, o.year}).second)
      throw RowError(table.source, table.line_numbers[r],
                     "duplicate (country, year) = (" + o.country + ", " + row[1] + ")");
    for (std::size_t c = 2; c < row.size(); ++c) {
      if (row[c].empty()) continue;
      const auto v = io::parse_double(row[c]);
      if (!v)
        throw RowError(table.source, table.line_numbers[r],
                       "column '" + table.header[c] + "': unparseable number '" + row[c] + "'");
      o.values[table.header[c]] = *v;
    }
    panel.observations.push_back(std::move(o));
  }
  panel.interval_years = panel.years();
  panel.sort();
  return panel;
}

inline PanelDataset read_panel(const std::filesystem::path& path) { return panel_from_csv(io::read_csv(path)); }

}  // namespace endogrowth
