#pragma once

// K-means over country feature vectors: z-score standardization, seeded
// k-means++ initialisation with restarts, Lloyd iterations, and the
// "member far from its cluster" anomaly rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"
#include "endogrowth/panel.hpp"

namespace endogrowth::clustering {

struct FeatureMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<double>> values;  // rows x columns
  bool standardized = false;
  // original = value * column_scale + column_offset
  std::vector<double> column_offset;
  std::vector<double> column_scale;

  std::size_t rows() const { return values.size(); }
  std::size_t cols() const { return column_labels.size(); }

  void validate() const {
    if (values.empty() || column_labels.empty()) throw ParameterError("feature matrix needs >= 1 row and column");
    if (row_labels.size() != values.size()) throw ParameterError("feature matrix: label count != row count");
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (values[r].size() != column_labels.size())
        throw ParameterError("feature matrix: row '" + row_labels[r] + "' has wrong width");
      for (double v : values[r])
        if (!std::isfinite(v)) throw ParameterError("feature matrix: non-finite value in row '" + row_labels[r] + "'");
    }
  }

  std::vector<double> to_original(const std::vector<double>& point) const {
    std::vector<double> out(point.size());
    for (std::size_t c = 0; c < point.size(); ++c) {
      const double scale = c < column_scale.size() ? column_scale[c] : 1.0;
      const double offset = c < column_offset.size() ? column_offset[c] : 0.0;
      out[c] = point[c] * scale + offset;
    }
    return out;
  }
};

inline FeatureMatrix make_feature_matrix(std::vector<std::string> rows, std::vector<std::string> cols,
                                         std::vector<std::vector<double>> values) {
  FeatureMatrix m;
  m.row_labels = std::move(rows);
  m.column_labels = std::move(cols);
  m.values = std::move(values);
  m.column_offset.assign(m.column_labels.size(), 0.0);
  m.column_scale.assign(m.column_labels.size(), 1.0);
  m.validate();
  return m;
}

/// CSV with the row label in the first column and one numeric column per feature.
inline FeatureMatrix feature_matrix_from_csv(const io::CsvTable& table) {
  if (table.header.size() < 2) throw SchemaError(table.source + ": feature CSV needs a label column and >= 1 feature");
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    labels.push_back(table.rows[r][0]);
    std::vector<double> row;
    for (std::size_t c = 1; c < table.header.size(); ++c) {
      const auto v = io::parse_double(table.rows[r][c]);
      if (!v)
        throw RowError(table.source, table.line_numbers[r],
                       "column '" + table.header[c] + "': missing or unparseable value '" + table.rows[r][c] + "'");
      row.push_back(*v);
    }
    values.push_back(std::move(row));
  }
  return make_feature_matrix(std::move(labels), {table.header.begin() + 1, table.header.end()}, std::move(values));
}

/// Rows of `panel` holding every feature; label = country (plus year when the
/// panel spans more than one year).
inline FeatureMatrix feature_matrix_from_panel(const PanelDataset& panel, const std::vector<std::string>& features) {
  for (const auto& f : features)
    if (!panel.has_column(f))
      throw ParameterError("unknown feature '" + f + "'; available columns: " + io::join(panel.columns, ", "));
  const bool multi_year = panel.years().size() > 1;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  for (const auto& o : panel.observations) {
    if (!o.has_all(features)) continue;
    labels.push_back(multi_year ? o.country + " " + std::to_string(o.year) : o.country);
    std::vector<double> row;
    for (const auto& f : features) row.push_back(*o.get(f));
    values.push_back(std::move(row));
  }
  if (values.empty()) throw InsufficientDataError("no panel rows carry all features: " + io::join(features, ", "));
  return make_feature_matrix(std::move(labels), features, std::move(values));
}

/// Column-wise z-scores using the sample standard deviation. Constant
/// columns become all zeros.
inline FeatureMatrix standardize(const FeatureMatrix& input) {
  input.validate();
  const std::size_t n = input.rows();
  if (n < 2) throw ParameterError("standardize: need at least two rows");
  FeatureMatrix out = input;
  out.standardized = true;
  if (out.column_offset.size() != input.cols()) out.column_offset.assign(input.cols(), 0.0);
  if (out.column_scale.size() != input.cols()) out.column_scale.assign(input.cols(), 1.0);
  for (std::size_t c = 0; c < input.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += input.values[r][c];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) ss += (input.values[r][c] - mean) * (input.values[r][c] - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    // relative test so that round-off in a numerically constant column does not blow up
    double magnitude = 0.0;
    for (std::size_t r = 0; r < n; ++r) magnitude = std::max(magnitude, std::fabs(input.values[r][c]));
    if (sd <= 1e-14 * std::max(1.0, magnitude)) sd = 0.0;

    for (std::size_t r = 0; r < n; ++r) out.values[r][c] = sd == 0.0 ? 0.0 : (input.values[r][c] - mean) / sd;

    const double prev_scale = input.column_scale.size() == input.cols() ? input.column_scale[c] : 1.0;
    const double prev_offset = input.column_offset.size() == input.cols() ? input.column_offset[c] : 0.0;
    // original = (z * sd + mean) * prev_scale + prev_offset
    out.column_scale[c] = sd * prev_scale;
    out.column_offset[c] = mean * prev_scale + prev_offset;
  }
  return out;
}

struct KMeansOptions {
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t max_iterations = 300;
};

struct ClusterModel {
  std::size_t k = 0;
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> assignments;  // per input row
  std::vector<double> distances;         // Euclidean distance to own centroid
  double sse = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t best_restart = 0;
  std::vector<double> sse_history;  // SSE after every assignment step of the chosen run
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;

  std::vector<std::size_t> members(std::size_t cluster) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
      if (assignments[i] == cluster) out.push_back(i);
    return out;
  }
};

namespace detail {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

struct Run {
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> assignments;
  std::vector<double> history;
  double sse = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

inline std::vector<std::vector<double>> seed_plus_plus(const std::vector<std::vector<double>>& points, std::size_t k,
                                                       std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  centroids.push_back(points[uniform_index(rng, n)]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], centroids.back()));
      total += nearest[i];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i];
        if (acc > target && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
      // guard against the target landing on the final partial sum
      if (nearest[pick] == 0.0) {
        for (std::size_t i = n; i-- > 0;)
          if (nearest[i] > 0.0) {
            pick = i;
            break;
          }
      }
    } else {
      pick = uniform_index(rng, n);
    }
    centroids.push_back(points[pick]);
  }
  return centroids;
}

inline double assign(const std::vector<std::vector<double>>& points, const std::vector<std::vector<double>>& centroids,
                     std::vector<std::size_t>& assignments) {
  double sse = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t best = 0;
    double best_d = squared_distance(points[i], centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
      const double d = squared_distance(points[i], centroids[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assignments[i] = best;
    sse += best_d;
  }
  return sse;
}

inline Run lloyd(const std::vector<std::vector<double>>& points, std::vector<std::vector<double>> centroids,
                 std::size_t max_iterations) {
  const std::size_t n = points.size();
  const std::size_t k = centroids.size();
  const std::size_t dim = points[0].size();
  Run run;
  run.assignments.assign(n, 0);
  run.sse = assign(points, centroids, run.assignments);
  run.history.push_back(run.sse);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[run.assignments[i]];
      for (std::size_t d = 0; d < dim; ++d) sums[run.assignments[i]][d] += points[i][d];
    }
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c] > 0)
        for (std::size_t d = 0; d < dim; ++d) centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);

    // Empty cluster: move its centroid onto the point farthest from its own centroid.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[run.assignments[i]] <= 1) continue;
        const double d = squared_distance(points[i], centroids[run.assignments[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d < 0.0) continue;
      --counts[run.assignments[far]];
      run.assignments[far] = c;
      counts[c] = 1;
      centroids[c] = points[far];
    }

    std::vector<std::size_t> next(n, 0);
    const double sse = assign(points, centroids, next);
    run.iterations = iter + 1;
    run.history.push_back(sse);
    const bool unchanged = next == run.assignments;
    run.assignments = std::move(next);
    run.sse = sse;
    if (unchanged) {
      run.converged = true;
      break;
    }
  }
  run.centroids = std::move(centroids);
  return run;
}

// Rows sorted by label, then by value, so that the result does not depend on input order.
inline std::vector<std::size_t> canonical_order(const FeatureMatrix& m) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (m.row_labels[a] != m.row_labels[b]) return m.row_labels[a] < m.row_labels[b];
    return m.values[a] < m.values[b];
  });
  return order;
}

}  // namespace detail

inline ClusterModel kmeans_fit(const FeatureMatrix& matrix, const KMeansOptions& options) {
  matrix.validate();
  const std::size_t n = matrix.rows();
  if (options.k < 1) throw ParameterError("kmeans: k must be >= 1");
  if (options.k > n)
    throw ParameterError("kmeans: k = " + std::to_string(options.k) + " exceeds the number of rows (" +
                         std::to_string(n) + ")");
  if (options.restarts < 1) throw ParameterError("kmeans: restarts must be >= 1");

  const auto order = detail::canonical_order(matrix);
  std::vector<std::vector<double>> points;
  points.reserve(n);
  for (std::size_t i : order) points.push_back(matrix.values[i]);

  std::optional<detail::Run> best;
  std::size_t best_restart = 0;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(options.seed >> 32), static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    auto run = detail::lloyd(points, detail::seed_plus_plus(points, options.k, rng), options.max_iterations);
    if (!best || run.sse < best->sse) {
      best = std::move(run);
      best_restart = r;
    }
  }

  ClusterModel model;
  model.k = options.k;
  model.seed = options.seed;
  model.restarts = options.restarts;
  model.best_restart = best_restart;
  model.iterations = best->iterations;
  model.converged = best->converged;
  model.sse_history = best->history;
  model.centroids = best->centroids;
  model.row_labels = matrix.row_labels;
  model.column_labels = matrix.column_labels;
  model.assignments.assign(n, 0);
  model.distances.assign(n, 0.0);
  double sse = 0.0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t row = order[pos];
    const std::size_t c = best->assignments[pos];
    const double d2 = detail::squared_distance(points[pos], model.centroids[c]);
    model.assignments[row] = c;
    model.distances[row] = std::sqrt(d2);
    sse += d2;
  }
  model.sse = sse;
  return model;
}

inline ClusterModel kmeans_fit(const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed) {
  KMeansOptions options;
  options.k = k;
  options.seed = seed;
  return kmeans_fit(matrix, options);
}

struct Anomaly {
  std::string label;
  std::size_t cluster = 0;
  double distance = 0.0;
  double cluster_rms_distance = 0.0;
};

struct AnomalyReport {
  double tau = 2.0;
  std::vector<Anomaly> anomalies;
  std::vector<bool> flagged;  // per row
  std::optional<std::size_t> suggested_k;
};

/// Flags rows farther than tau times the RMS member distance of their cluster.
/// Singleton clusters and clusters with zero spread are never flagged.
inline AnomalyReport detect_anomalies(const ClusterModel& model, double tau = 2.0) {
  if (!(tau > 0.0)) throw ParameterError("detect_anomalies: tau must be > 0");
  AnomalyReport report;
  report.tau = tau;
  report.flagged.assign(model.assignments.size(), false);
  for (std::size_t c = 0; c < model.k; ++c) {
    const auto idx = model.members(c);
    if (idx.size() < 2) continue;
    double ss = 0.0;
    for (std::size_t i : idx) ss += model.distances[i] * model.distances[i];
    const double rms = std::sqrt(ss / static_cast<double>(idx.size()));
    if (rms == 0.0) continue;
    for (std::size_t i : idx) {
      if (model.distances[i] > tau * rms) {
        report.flagged[i] = true;
        report.anomalies.push_back({model.row_labels[i], c, model.distances[i], rms});
      }
    }
  }
  std::stable_sort(report.anomalies.begin(), report.anomalies.end(), [](const Anomaly& a, const Anomaly& b) {
    if (a.cluster != b.cluster) return a.cluster < b.cluster;
    return a.label < b.label;
  });
  if (!report.anomalies.empty()) report.suggested_k = model.k + 1;
  return report;
}

struct ClusterGroup {
  std::size_t id = 0;
  std::vector<std::string> members;
  std::vector<double> centroid_original;
  double outcome_min = 0.0;
  double outcome_max = 0.0;
  double outcome_mean = 0.0;
};

struct ClusterReport {
  std::string outcome_name;
  std::vector<std::string> column_labels;
  std::vector<ClusterGroup> groups;
};

/// `matrix` must be the matrix the model was fitted on (for de-standardisation);
/// `outcome` maps row label to the plotted outcome, e.g. output per capita.
inline ClusterReport cluster_report(const ClusterModel& model, const FeatureMatrix& matrix,
                                    const std::map<std::string, double>& outcome, std::string outcome_name = "outcome") {
  for (const auto& label : model.row_labels)
    if (!outcome.count(label)) throw ParameterError("cluster_report: missing outcome for row '" + label + "'");
  ClusterReport report;
  report.outcome_name = std::move(outcome_name);
  report.column_labels = model.column_labels;
  for (std::size_t c = 0; c < model.k; ++c) {
    ClusterGroup g;
    g.id = c;
    g.centroid_original = matrix.to_original(model.centroids[c]);
    const auto idx = model.members(c);
    double sum = 0.0;
    g.outcome_min = std::numeric_limits<double>::infinity();
    g.outcome_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i : idx) {
      g.members.push_back(model.row_labels[i]);
      const double v = outcome.at(model.row_labels[i]);
      g.outcome_min = std::min(g.outcome_min, v);
      g.outcome_max = std::max(g.outcome_max, v);
      sum += v;
    }
    std::sort(g.members.begin(), g.members.end());
    if (idx.empty()) g.outcome_min = g.outcome_max = std::numeric_limits<double>::quiet_NaN();
    g.outcome_mean = idx.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(idx.size());
    report.groups.push_back(std::move(g));
  }
  return report;
}

inline std::string format_cluster_report(const ClusterReport& r) {
  std::string out;
  for (const auto& g : r.groups) {
    out += "cluster " + std::to_string(g.id) + " (" + std::to_string(g.members.size()) + " members)\n";
    out += "  centroid:";
    for (std::size_t c = 0; c < g.centroid_original.size(); ++c)
      out += " " + r.column_labels[c] + "=" + io::format_double(g.centroid_original[c]);
    out += "\n  " + r.outcome_name + " range: [" + io::format_double(g.outcome_min) + ", " +
           io::format_double(g.outcome_max) + "]\n";
    out += "  members: " + io::join(g.members, ", ") + "\n";
  }
  return out;
}

inline nlohmann::json cluster_report_to_json(const ClusterReport& r) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : r.groups)
    groups.push_back({{"id", g.id},
                      {"members", g.members},
                      {"centroid", g.centroid_original},
                      {"outcome_min", g.outcome_min},
                      {"outcome_max", g.outcome_max},
                      {"outcome_mean", g.outcome_mean}});
  return {{"outcome", r.outcome_name}, {"features", r.column_labels}, {"clusters", groups}};
}

inline nlohmann::json model_to_json(const ClusterModel& m, const FeatureMatrix& matrix) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.assignments.size(); ++i)
    rows.push_back({{"label", m.row_labels[i]}, {"cluster", m.assignments[i]}, {"distance", m.distances[i]}});
  nlohmann::json original = nlohmann::json::array();
  for (const auto& c : m.centroids) original.push_back(matrix.to_original(c));
  return {{"k", m.k},
          {"seed", m.seed},
          {"restarts", m.restarts},
          {"best_restart", m.best_restart},
          {"iterations", m.iterations},
          {"converged", m.converged},
          {"sse", m.sse},
          {"sse_history", m.sse_history},
          {"features", m.column_labels},
          {"standardized", matrix.standardized},
          {"centroids", m.centroids},
          {"centroids_original_units", original},
          {"assignments", rows}};
}

inline std::string assignments_csv(const ClusterModel& m, const AnomalyReport& anomalies) {
  std::string out = "country,cluster,distance,flagged\n";
  for (std::size_t i = 0; i < m.assignments.size(); ++i) {
    const bool flagged = i < anomalies.flagged.size() && anomalies.flagged[i];
    out += io::quote_csv(m.row_labels[i]) + "," + std::to_string(m.assignments[i]) + "," +
           io::format_double(m.distances[i]) + "," + (flagged ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace endogrowth::clustering
