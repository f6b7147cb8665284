#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "endogrowth/endogrowth.hpp"

#ifndef ENDOGROWTH_TEST_DATA_DIR
#define ENDOGROWTH_TEST_DATA_DIR "tests/data"
#endif

namespace fs = std::filesystem;

namespace fixtures {

inline fs::path data_dir() { return ENDOGROWTH_TEST_DATA_DIR; }

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "eg") {
    static int counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() / (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

// ---------------------------------------------------------------------------
// Printed break-even table

struct GoldenRow {
  long t;
  double y_base, y_rd, effectiveness, H, A;
};

inline std::vector<GoldenRow> golden_table() {
  const auto csv = endogrowth::io::read_csv(data_dir() / "breakeven_golden.csv");
  std::vector<GoldenRow> rows;
  for (const auto& r : csv.rows)
    rows.push_back({*endogrowth::io::parse_long(r[0]), *endogrowth::io::parse_double(r[1]),
                    *endogrowth::io::parse_double(r[2]), *endogrowth::io::parse_double(r[3]),
                    *endogrowth::io::parse_double(r[4]), *endogrowth::io::parse_double(r[5])});
  return rows;
}

inline endogrowth::PanelDataset cross_section_2005() {
  return endogrowth::read_panel(data_dir() / "cross_section_2005.csv");
}

// ---------------------------------------------------------------------------
// Synthetic source snapshots in the default mapping layout

struct SnapshotCountry {
  std::string code;
  bool in_pwt = true;
  bool in_education = true;
  bool in_indicators = true;
  // (variable, year) cells written as the missing token
  std::set<std::pair<std::string, int>> missing{};
};

inline std::string code_for_name(const std::string& name) {
  for (const auto& [c, n] : endogrowth::countries::kIso3Names)
    if (n == name) return std::string(c);
  throw std::runtime_error("no ISO code for " + name);
}

/// Writes pwt.csv (annual), education.csv (every 5 years) and indicators.csv
/// (annual) for 1960..2009 with smooth deterministic series per country.
inline void write_snapshots(const fs::path& dir, const std::vector<SnapshotCountry>& countries, int first_year = 1960,
                            int last_year = 2009) {
  using endogrowth::io::format_double;
  std::string pwt = "country,isocode,year,POP,LF,tcgdp,ki\n";
  std::string edu = "BLcode,country,WBcode,year,yr_sch,yr_sch_sec\n";
  std::string ind = "country_name,country_code,year,patent_applications_residents,rd_expenditure_pct_gdp\n";
  auto cell = [](const SnapshotCountry& c, const std::string& var, int year, double v) {
    return c.missing.count({var, year}) ? std::string("..") : format_double(v);
  };
  for (std::size_t i = 0; i < countries.size(); ++i) {
    const auto& c = countries[i];
    const double k = static_cast<double>(i);
    const std::string name = endogrowth::countries::name_for_code(c.code).value_or(c.code);
    const std::string quoted = endogrowth::io::quote_csv(name);
    for (int y = first_year; y <= last_year; ++y) {
      const double s = y - first_year;
      const double pop = 1000.0 * (5.0 + k) * std::pow(1.0 + 0.005 + 0.0004 * std::fmod(k, 7.0), s);
      const double lf = pop * (0.40 + 0.003 * std::fmod(k, 5.0) + 0.001 * s);
      const double gdp = pop * (1.5 + 0.3 * std::fmod(k, 9.0)) * std::pow(1.02 + 0.001 * std::fmod(k, 4.0), s);
      const double ki = 12.0 + std::fmod(k, 11.0) + 0.3 * std::fmod(static_cast<double>(y), 7.0);
      if (c.in_pwt)
        pwt += quoted + "," + c.code + "," + std::to_string(y) + "," + cell(c, "P", y, pop) + "," +
               cell(c, "L", y, lf) + "," + cell(c, "Y", y, gdp) + "," + cell(c, "I/Y", y, ki) + "\n";
      if (c.in_education && y % 5 == 0) {
        const double sch = 1.5 + std::fmod(k * 0.73, 9.0) + 0.05 * s;
        edu += std::to_string(i) + "," + quoted + "," + c.code + "," + std::to_string(y) + "," +
               cell(c, "h1", y, sch) + "," + format_double(sch * 0.4) + "\n";
      }
      if (c.in_indicators) {
        const double pa = 20.0 * (1.0 + k) * std::pow(1.03, s);
        const double rd = 0.1 + 0.07 * std::fmod(k, 20.0) + 0.01 * s;
        ind += quoted + "," + c.code + "," + std::to_string(y) + "," + cell(c, "Pa", y, pa) + "," +
               cell(c, "gdp_rd", y, rd) + "\n";
      }
    }
  }
  endogrowth::io::write_file(dir / "pwt.csv", pwt);
  endogrowth::io::write_file(dir / "education.csv", edu);
  endogrowth::io::write_file(dir / "indicators.csv", ind);
}

/// Five countries; Kenya lacks patents in 1990 and Peru lacks schooling in 2000.
inline std::vector<SnapshotCountry> five_country_snapshot() {
  std::vector<SnapshotCountry> c = {{"USA"}, {"FRA"}, {"JPN"}, {"KEN"}, {"PER"}};
  c[3].missing = {{"Pa", 1990}};
  c[4].missing = {{"h1", 2000}};
  return c;
}

/// The 60 reference countries plus entities that the exclusion list or the
/// complete-case rule must remove.
inline std::vector<SnapshotCountry> reference_scale_snapshot() {
  std::vector<SnapshotCountry> c;
  for (const auto& name : endogrowth::countries::reference_roster()) c.push_back({code_for_name(name)});
  c.push_back({"CH2"});
  c.push_back({"ZAR"});
  c.push_back({"REU"});
  for (const char* code : {"MMR", "COD", "GMB"}) {
    SnapshotCountry s{code};
    s.in_pwt = false;
    s.in_indicators = false;
    c.push_back(s);
  }
  SnapshotCountry haiti{"HTI"};
  haiti.missing = {{"Pa", 1985}};
  c.push_back(haiti);
  SnapshotCountry fiji{"FJI"};
  fiji.missing = {{"h1", 1970}};
  c.push_back(fiji);
  SnapshotCountry cuba{"CUB"};
  cuba.in_indicators = false;
  c.push_back(cuba);
  return c;
}

// ---------------------------------------------------------------------------
// Independent least-squares oracle: normal equations in long double with
// Gauss-Jordan elimination and partial pivoting.

inline std::vector<double> normal_equations(const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
  const std::size_t n = X.size(), k = X[0].size();
  std::vector<std::vector<long double>> A(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) A[a][b] += static_cast<long double>(X[i][a]) * X[i][b];
      A[a][k] += static_cast<long double>(X[i][a]) * y[i];
    }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::fabs(A[r][c]) > std::fabs(A[p][c])) p = r;
    std::swap(A[c], A[p]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const long double f = A[r][c] / A[c][c];
      for (std::size_t j = c; j <= k; ++j) A[r][j] -= f * A[c][j];
    }
  }
  std::vector<double> beta(k);
  for (std::size_t c = 0; c < k; ++c) beta[c] = static_cast<double>(A[c][k] / A[c][c]);
  return beta;
}

// ---------------------------------------------------------------------------
// Exhaustive optimum over all 2-partitions of a small point set.

inline double brute_force_two_partition_sse(const std::vector<std::vector<double>>& pts) {
  const std::size_t n = pts.size(), d = pts[0].size();
  double best = std::numeric_limits<double>::infinity();
  // Point 0 always in group 0; every nonempty proper split is visited once.
  for (unsigned long mask = 1; mask < (1UL << (n - 1)); ++mask) {
    double sse = 0.0;
    for (int g = 0; g < 2; ++g) {
      std::vector<double> mean(d, 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool in1 = i > 0 && ((mask >> (i - 1)) & 1UL);
        if (in1 != (g == 1)) continue;
        ++count;
        for (std::size_t j = 0; j < d; ++j) mean[j] += pts[i][j];
      }
      for (auto& m : mean) m /= static_cast<double>(count);
      for (std::size_t i = 0; i < n; ++i) {
        const bool in1 = i > 0 && ((mask >> (i - 1)) & 1UL);
        if (in1 != (g == 1)) continue;
        for (std::size_t j = 0; j < d; ++j) sse += (pts[i][j] - mean[j]) * (pts[i][j] - mean[j]);
      }
    }
    best = std::min(best, sse);
  }
  return best;
}

/// Ten points in two loose groups, used as the k=2 toy fixture.
inline endogrowth::clustering::FeatureMatrix toy_two_cluster_matrix() {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> v = {{0.0, 0.1},  {0.4, -0.2}, {-0.3, 0.5}, {0.2, 0.9},  {1.1, 0.3},
                                        {4.0, 4.2},  {4.6, 3.7},  {3.5, 4.9},  {5.2, 4.4},  {2.4, 2.1}};
  for (std::size_t i = 0; i < v.size(); ++i) labels.push_back("p" + std::to_string(i));
  return endogrowth::clustering::make_feature_matrix(labels, {"x", "y"}, v);
}

}  // namespace fixtures
