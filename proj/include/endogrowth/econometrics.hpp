#pragma once

// Pooled OLS over a country-year panel with the usual battery of fit
// statistics (information criteria, R-squared family, F test, panel-aware
// Durbin-Watson).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"
#include "endogrowth/panel.hpp"
#include "endogrowth/special_functions.hpp"

namespace endogrowth::econometrics {

inline constexpr double kRankTolerance = 1e-10;
inline constexpr const char* kInterceptName = "const";

struct RegressionSpec {
  std::string dependent;
  std::vector<std::string> regressors;
  bool include_intercept = true;
  std::string label;

  void validate() const {
    if (dependent.empty()) throw ParameterError("regression spec: dependent variable is empty");
    if (regressors.empty()) throw ParameterError("regression spec: at least one regressor is required");
    std::set<std::string> seen;
    for (const auto& r : regressors) {
      if (!seen.insert(r).second) throw ParameterError("regression spec: duplicate regressor '" + r + "'");
      if (r == dependent) throw ParameterError("regression spec: dependent '" + r + "' also listed as regressor");
    }
  }
};

inline std::string significance_stars(double p_value) {
  if (!(p_value <= 0.10)) return "";
  if (p_value <= 0.01) return "***";
  if (p_value <= 0.05) return "**";
  return "*";
}

struct Coefficient {
  std::string name;
  double coefficient = 0.0;
  double std_error = 0.0;
  double t_ratio = 0.0;
  double p_value = 1.0;
  std::string stars;
};

/// Fit statistics derived from (n, k, SSR) and, optionally, the residual series.
struct Diagnostics {
  std::size_t n = 0;
  std::size_t k = 0;
  double ssr = 0.0;
  double ser = 0.0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;
  double f_pvalue = 1.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double hannan_quinn = 0.0;
  double dependent_mean = 0.0;
  double dependent_sd = 0.0;
  std::optional<double> durbin_watson;
  std::optional<double> rho;
  bool exact_fit = false;
};

struct DurbinWatson {
  double statistic = 0.0;
  double rho = 0.0;
};

/// `unit_starts` holds the index of the first residual of each
/// cross-sectional unit (sorted, first element 0). Pairs that straddle two
/// units are excluded from every sum except the DW denominator.
inline DurbinWatson durbin_watson_rho(std::span<const double> residuals, std::span<const std::size_t> unit_starts) {
  std::vector<std::size_t> starts(unit_starts.begin(), unit_starts.end());
  if (starts.empty() || starts.front() != 0) starts.insert(starts.begin(), 0);
  std::set<std::size_t> boundary(starts.begin(), starts.end());

  double diff_sq = 0.0;
  double cross = 0.0;
  double lag_sq = 0.0;
  double total_sq = 0.0;
  std::size_t pairs = 0;
  for (std::size_t t = 0; t < residuals.size(); ++t) {
    total_sq += residuals[t] * residuals[t];
    if (t == 0 || boundary.count(t)) continue;
    const double d = residuals[t] - residuals[t - 1];
    diff_sq += d * d;
    cross += residuals[t] * residuals[t - 1];
    lag_sq += residuals[t - 1] * residuals[t - 1];
    ++pairs;
  }
  if (pairs == 0) throw UndefinedStatisticError("durbin_watson_rho: no unit has two or more residuals");
  if (total_sq == 0.0 || lag_sq == 0.0)
    throw UndefinedStatisticError("durbin_watson_rho: residuals are identically zero");
  return {diff_sq / total_sq, cross / lag_sq};
}

inline Diagnostics compute_diagnostics(std::size_t n, std::size_t k, double ssr, double dependent_mean,
                                       double dependent_sd, std::span<const double> residuals = {},
                                       std::span<const std::size_t> unit_starts = {}) {
  if (n <= k) throw InsufficientDataError("compute_diagnostics: need n > k (n=" + std::to_string(n) +
                                          ", k=" + std::to_string(k) + ")");
  if (!(ssr >= 0.0)) throw ParameterError("compute_diagnostics: SSR must be >= 0");
  if (!(dependent_sd > 0.0)) throw ParameterError("compute_diagnostics: dependent SD must be > 0");

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double dof = nd - kd;
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  Diagnostics d;
  d.n = n;
  d.k = k;
  d.ssr = ssr;
  d.dependent_mean = dependent_mean;
  d.dependent_sd = dependent_sd;
  d.ser = std::sqrt(ssr / dof);

  const double tss = (nd - 1.0) * dependent_sd * dependent_sd;
  // residual sums at round-off level are an exact fit
  if (ssr <= 1e-20 * tss) ssr = 0.0;
  d.ssr = ssr;
  d.ser = std::sqrt(ssr / dof);
  d.r_squared = 1.0 - ssr / tss;
  d.adj_r_squared = 1.0 - (1.0 - d.r_squared) * (nd - 1.0) / dof;

  if (k >= 2) {
    d.f_statistic = (d.r_squared / (kd - 1.0)) / ((1.0 - d.r_squared) / dof);
    d.f_pvalue = ssr == 0.0 ? 0.0 : stats::f_pvalue(d.f_statistic, kd - 1.0, dof);
  } else {
    d.f_statistic = std::numeric_limits<double>::quiet_NaN();
    d.f_pvalue = std::numeric_limits<double>::quiet_NaN();
  }

  if (ssr == 0.0) {
    d.exact_fit = true;
    d.r_squared = 1.0;
    d.adj_r_squared = 1.0;
    d.f_statistic = std::numeric_limits<double>::infinity();
    d.log_likelihood = std::numeric_limits<double>::infinity();
    d.aic = d.bic = d.hannan_quinn = -std::numeric_limits<double>::infinity();
  } else {
    d.log_likelihood = -0.5 * nd * (1.0 + std::log(kTwoPi) + std::log(ssr / nd));
    d.aic = 2.0 * kd - 2.0 * d.log_likelihood;
    d.bic = kd * std::log(nd) - 2.0 * d.log_likelihood;
    d.hannan_quinn = 2.0 * kd * std::log(std::log(nd)) - 2.0 * d.log_likelihood;
  }

  if (!residuals.empty() && !d.exact_fit) {
    try {
      const auto dw = durbin_watson_rho(residuals, unit_starts);
      d.durbin_watson = dw.statistic;
      d.rho = dw.rho;
    } catch (const UndefinedStatisticError&) {
      // left unset: singleton units or an exact fit
    }
  }
  return d;
}

struct RegressionResult {
  std::string label;
  std::string dependent;
  std::vector<Coefficient> coefficients;
  Diagnostics diagnostics;
  std::size_t n_units = 0;
  std::size_t min_unit_length = 0;
  std::size_t max_unit_length = 0;
  int first_year = 0;
  int last_year = 0;
  std::size_t n_excluded = 0;  // panel rows skipped for missing spec variables
  std::vector<double> residuals;
  std::vector<double> fitted;

  std::string time_series_description() const {
    if (min_unit_length == max_unit_length) return "Time-series length = " + std::to_string(max_unit_length);
    return "Time-series length: varying (minimum " + std::to_string(min_unit_length) + ", maximum " +
           std::to_string(max_unit_length) + ")";
  }

  const Coefficient& coefficient(const std::string& name) const {
    for (const auto& c : coefficients)
      if (c.name == name) return c;
    throw ParameterError("no coefficient named '" + name + "'");
  }
};

namespace detail {

// Dense row-major matrix, just enough for the least-squares solve.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct LeastSquares {
  std::vector<double> beta;
  Matrix covariance_unscaled;  // (X'X)^-1
};

/// Householder QR with column pivoting on a column-equilibrated copy of X.
/// Throws CollinearityError when a pivot falls below kRankTolerance times the
/// leading pivot; the offending columns are the ones left after the rank is
/// exhausted.
inline LeastSquares solve_least_squares(Matrix x, std::vector<double> y, const std::vector<std::string>& names) {
  const std::size_t n = x.rows;
  const std::size_t p = x.cols;

  std::vector<double> scale(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j) * x(i, j);
    scale[j] = std::sqrt(s);
    if (scale[j] == 0.0) throw CollinearityError({names[j]}, "collinear design: column '" + names[j] + "' is all zeros");
    for (std::size_t i = 0; i < n; ++i) x(i, j) /= scale[j];
  }

  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> col_norm(p);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j) * x(i, j);
    col_norm[j] = s;
  }

  double leading = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    // pivot: largest remaining column norm (recomputed exactly to avoid drift)
    std::size_t best = j;
    double best_norm = -1.0;
    for (std::size_t c = j; c < p; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < n; ++i) s += x(i, c) * x(i, c);
      col_norm[c] = s;
      if (s > best_norm) {
        best_norm = s;
        best = c;
      }
    }
    if (best != j) {
      for (std::size_t i = 0; i < n; ++i) std::swap(x(i, j), x(i, best));
      std::swap(perm[j], perm[best]);
      std::swap(col_norm[j], col_norm[best]);
    }

    double norm = std::sqrt(best_norm);
    if (j == 0) leading = norm;
    if (norm <= kRankTolerance * leading) {
      std::vector<std::string> dependent;
      for (std::size_t c = j; c < p; ++c) dependent.push_back(names[perm[c]]);
      throw CollinearityError(dependent, "collinear design matrix: rank " + std::to_string(j) + " < " +
                                             std::to_string(p) + "; dependent columns: " +
                                             io::join(dependent, ", "));
    }

    const double alpha = x(j, j) > 0 ? -norm : norm;
    std::vector<double> v(n - j);
    for (std::size_t i = j; i < n; ++i) v[i - j] = x(i, j);
    v[0] -= alpha;
    double vnorm_sq = 0.0;
    for (double e : v) vnorm_sq += e * e;
    if (vnorm_sq > 0.0) {
      for (std::size_t c = j; c < p; ++c) {
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i - j] * x(i, c);
        const double f = 2.0 * dot / vnorm_sq;
        for (std::size_t i = j; i < n; ++i) x(i, c) -= f * v[i - j];
      }
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i - j] * y[i];
      const double f = 2.0 * dot / vnorm_sq;
      for (std::size_t i = j; i < n; ++i) y[i] -= f * v[i - j];
    }
    x(j, j) = alpha;
    for (std::size_t i = j + 1; i < n; ++i) x(i, j) = 0.0;
  }

  // Back substitution R z = Q'y.
  std::vector<double> z(p, 0.0);
  for (std::size_t jj = p; jj-- > 0;) {
    double s = y[jj];
    for (std::size_t c = jj + 1; c < p; ++c) s -= x(jj, c) * z[c];
    z[jj] = s / x(jj, jj);
  }

  // R^-1 (upper triangular).
  Matrix rinv(p, p);
  for (std::size_t c = 0; c < p; ++c) {
    rinv(c, c) = 1.0 / x(c, c);
    for (std::size_t r = c; r-- > 0;) {
      double s = 0.0;
      for (std::size_t m = r + 1; m <= c; ++m) s += x(r, m) * rinv(m, c);
      rinv(r, c) = -s / x(r, r);
    }
  }

  LeastSquares out;
  out.beta.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) out.beta[perm[j]] = z[j] / scale[perm[j]];

  out.covariance_unscaled = Matrix(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) {
      double s = 0.0;
      for (std::size_t m = std::max(a, b); m < p; ++m) s += rinv(a, m) * rinv(b, m);
      out.covariance_unscaled(perm[a], perm[b]) = s / (scale[perm[a]] * scale[perm[b]]);
    }
  return out;
}

}  // namespace detail

/// Pooled OLS on the rows of `panel` that carry every variable of `spec`.
/// Rows are taken in (country, year) order; each country is one unit for the
/// Durbin-Watson computation.
inline RegressionResult fit_pooled_ols(const PanelDataset& panel, const RegressionSpec& spec) {
  spec.validate();
  std::vector<std::string> needed = spec.regressors;
  needed.push_back(spec.dependent);
  for (const auto& name : needed) {
    if (!panel.has_column(name))
      throw ParameterError("unknown variable '" + name + "'; available columns: " + io::join(panel.columns, ", "));
  }

  std::vector<const Observation*> rows;
  std::size_t excluded = 0;
  for (const auto& o : panel.observations) {
    if (o.has_all(needed)) rows.push_back(&o);
    else ++excluded;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Observation* a, const Observation* b) {
    if (a->country != b->country) return a->country < b->country;
    return a->year < b->year;
  });

  const std::size_t n = rows.size();
  const std::size_t k = spec.regressors.size() + (spec.include_intercept ? 1 : 0);
  if (n <= k)
    throw InsufficientDataError("insufficient data: " + std::to_string(n) + " complete observations for " +
                                std::to_string(k) + " parameters");

  std::vector<std::string> names;
  if (spec.include_intercept) names.push_back(kInterceptName);
  names.insert(names.end(), spec.regressors.begin(), spec.regressors.end());

  detail::Matrix x(n, k);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    if (spec.include_intercept) x(i, c++) = 1.0;
    for (const auto& r : spec.regressors) x(i, c++) = *rows[i]->get(r);
    y[i] = *rows[i]->get(spec.dependent);
  }

  const auto ls = detail::solve_least_squares(x, y, names);

  RegressionResult result;
  result.label = spec.label;
  result.dependent = spec.dependent;
  result.n_excluded = excluded;
  result.residuals.resize(n);
  result.fitted.resize(n);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t c = 0; c < k; ++c) fit += x(i, c) * ls.beta[c];
    result.fitted[i] = fit;
    result.residuals[i] = y[i] - fit;
    ssr += result.residuals[i] * result.residuals[i];
  }

  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw ParameterError("dependent variable '" + spec.dependent + "' is constant");

  std::vector<std::size_t> unit_starts;
  for (std::size_t i = 0; i < n; ++i)
    if (i == 0 || rows[i]->country != rows[i - 1]->country) unit_starts.push_back(i);

  result.diagnostics = compute_diagnostics(n, k, ssr, mean, sd, result.residuals, unit_starts);

  const double sigma_sq = ssr / static_cast<double>(n - k);
  const double dof = static_cast<double>(n - k);
  for (std::size_t c = 0; c < k; ++c) {
    Coefficient coef;
    coef.name = names[c];
    coef.coefficient = ls.beta[c];
    coef.std_error = std::sqrt(sigma_sq * ls.covariance_unscaled(c, c));
    coef.t_ratio = coef.std_error > 0.0 ? coef.coefficient / coef.std_error
                                        : (coef.coefficient == 0.0 ? 0.0
                                                                   : std::copysign(std::numeric_limits<double>::infinity(),
                                                                                   coef.coefficient));
    coef.p_value = stats::student_t_pvalue(coef.t_ratio, dof);
    coef.stars = significance_stars(coef.p_value);
    result.coefficients.push_back(coef);
  }

  result.n_units = unit_starts.size();
  result.min_unit_length = n;
  result.max_unit_length = 0;
  for (std::size_t u = 0; u < unit_starts.size(); ++u) {
    const std::size_t end = u + 1 < unit_starts.size() ? unit_starts[u + 1] : n;
    const std::size_t len = end - unit_starts[u];
    result.min_unit_length = std::min(result.min_unit_length, len);
    result.max_unit_length = std::max(result.max_unit_length, len);
  }
  result.first_year = std::numeric_limits<int>::max();
  result.last_year = std::numeric_limits<int>::min();
  for (const auto* r : rows) {
    result.first_year = std::min(result.first_year, r->year);
    result.last_year = std::max(result.last_year, r->year);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Formatting

namespace detail {

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

inline std::string fmt_stat(double v) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.6f", v);
}

inline std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace detail

/// p-values under 1e-4 print in exponent form, others with four decimals.
inline std::string format_p_value(double p) {
  if (std::isnan(p)) return "n/a";
  if (p < 1e-4) return detail::fmt("%.2e", p);
  return detail::fmt("%.4f", p);
}

/// Plain-text table laid out like a gretl model printout: header block,
/// coefficient rows, then eleven diagnostic rows.
inline std::string format_result_table(const RegressionResult& r) {
  const auto& d = r.diagnostics;
  std::string out;
  if (!r.label.empty()) out += r.label + ": ";
  out += "Pooled OLS, using " + std::to_string(d.n) + " observations\n";
  out += "Included " + std::to_string(r.n_units) + " cross-sectional units\n";
  out += r.time_series_description() + " (" + std::to_string(r.first_year) + "-" + std::to_string(r.last_year) +
         ")\n";
  out += "Dependent variable: " + r.dependent + "\n";
  out += "Mean dependent var  " + detail::fmt_stat(d.dependent_mean) + "   S.D. dependent var  " +
         detail::fmt_stat(d.dependent_sd) + "\n\n";

  std::size_t name_width = std::string("independent variable").size();
  for (const auto& c : r.coefficients) name_width = std::max(name_width, c.name.size());
  name_width += 2;
  out += detail::pad_right("independent variable", name_width) + detail::pad_left("coefficient", 14) +
         detail::pad_left("std. error", 14) + detail::pad_left("t-ratio", 10) + detail::pad_left("p-value", 12) +
         "\n";
  for (const auto& c : r.coefficients) {
    std::string line = detail::pad_right(c.name, name_width) + detail::pad_left(detail::fmt("%.6g", c.coefficient), 14) +
                       detail::pad_left(detail::fmt("%.6g", c.std_error), 14) +
                       detail::pad_left(detail::fmt("%.3f", c.t_ratio), 10) +
                       detail::pad_left(format_p_value(c.p_value), 12);
    if (!c.stars.empty()) line += " " + c.stars;
    out += line + "\n";
  }
  out += "\n";

  const auto row = [&](const std::string& name, const std::string& value) {
    out += detail::pad_right(name, 22) + value + "\n";
  };
  row("Sum squared resid", detail::fmt_stat(d.ssr));
  row("S.E. of regression", detail::fmt_stat(d.ser));
  row("R-squared", detail::fmt_stat(d.r_squared));
  row("Adjusted R-squared", detail::fmt_stat(d.adj_r_squared));
  row("F(" + std::to_string(d.k - 1) + ", " + std::to_string(d.n - d.k) + ")",
      detail::fmt_stat(d.f_statistic) + "   P-value(F) " + format_p_value(d.f_pvalue));
  row("Log-likelihood", detail::fmt_stat(d.log_likelihood));
  row("Akaike criterion", detail::fmt_stat(d.aic));
  row("Schwarz criterion", detail::fmt_stat(d.bic));
  row("Hannan-Quinn", detail::fmt_stat(d.hannan_quinn));
  row("rho", d.rho ? detail::fmt_stat(*d.rho) : "n/a");
  row("Durbin-Watson", d.durbin_watson ? detail::fmt_stat(*d.durbin_watson) : "n/a");
  return out;
}

inline nlohmann::json diagnostics_to_json(const Diagnostics& d) {
  using detail::number_or_null;
  nlohmann::json j{{"n_obs", d.n},
                   {"n_params", d.k},
                   {"ssr", number_or_null(d.ssr)},
                   {"ser", number_or_null(d.ser)},
                   {"r_squared", number_or_null(d.r_squared)},
                   {"adj_r_squared", number_or_null(d.adj_r_squared)},
                   {"f_statistic", number_or_null(d.f_statistic)},
                   {"f_pvalue", number_or_null(d.f_pvalue)},
                   {"log_likelihood", number_or_null(d.log_likelihood)},
                   {"aic", number_or_null(d.aic)},
                   {"bic", number_or_null(d.bic)},
                   {"hannan_quinn", number_or_null(d.hannan_quinn)},
                   {"dependent_mean", number_or_null(d.dependent_mean)},
                   {"dependent_sd", number_or_null(d.dependent_sd)},
                   {"exact_fit", d.exact_fit}};
  j["durbin_watson"] = d.durbin_watson ? number_or_null(*d.durbin_watson) : nlohmann::json(nullptr);
  j["rho"] = d.rho ? number_or_null(*d.rho) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json result_to_json(const RegressionResult& r) {
  using detail::number_or_null;
  nlohmann::json coefs = nlohmann::json::array();
  for (const auto& c : r.coefficients)
    coefs.push_back({{"name", c.name},
                     {"coefficient", number_or_null(c.coefficient)},
                     {"std_error", number_or_null(c.std_error)},
                     {"t_ratio", number_or_null(c.t_ratio)},
                     {"p_value", number_or_null(c.p_value)},
                     {"stars", c.stars}});
  return {{"label", r.label},
          {"dependent", r.dependent},
          {"coefficients", coefs},
          {"diagnostics", diagnostics_to_json(r.diagnostics)},
          {"cross_sectional_units", r.n_units},
          {"time_series", r.time_series_description()},
          {"min_unit_length", r.min_unit_length},
          {"max_unit_length", r.max_unit_length},
          {"first_year", r.first_year},
          {"last_year", r.last_year},
          {"excluded_rows", r.n_excluded}};
}

// ---------------------------------------------------------------------------
// Model comparison

struct ComparisonEntry {
  std::string label;
  std::size_t index = 0;  // position in the input list
  std::size_t rank = 0;   // 1 = preferred
  double bic = 0.0;
  double aic = 0.0;
  // differences against the first (baseline) model
  double delta_log_likelihood = 0.0;
  double delta_ssr = 0.0;
  double delta_ser = 0.0;
  double delta_r_squared = 0.0;
};

struct ModelComparison {
  std::vector<ComparisonEntry> ranking;  // preferred first
  std::size_t winner = 0;                // index into the input list
  bool tie = false;
};

/// Ranks by Schwarz criterion, breaking ties with Akaike.
inline ModelComparison compare_models(std::span<const Diagnostics> models, std::span<const std::string> labels = {}) {
  if (models.size() < 2) throw ParameterError("compare_models: need at least two models");
  const auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)}); };

  ModelComparison out;
  const Diagnostics& base = models[0];
  for (std::size_t i = 0; i < models.size(); ++i) {
    ComparisonEntry e;
    e.label = i < labels.size() ? labels[i] : "Model " + std::to_string(i + 1);
    e.index = i;
    e.bic = models[i].bic;
    e.aic = models[i].aic;
    e.delta_log_likelihood = models[i].log_likelihood - base.log_likelihood;
    e.delta_ssr = models[i].ssr - base.ssr;
    e.delta_ser = models[i].ser - base.ser;
    e.delta_r_squared = models[i].r_squared - base.r_squared;
    out.ranking.push_back(e);
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](const ComparisonEntry& a, const ComparisonEntry& b) {
    if (!close(a.bic, b.bic)) return a.bic < b.bic;
    if (!close(a.aic, b.aic)) return a.aic < b.aic;
    return false;
  });
  for (std::size_t r = 0; r < out.ranking.size(); ++r) out.ranking[r].rank = r + 1;
  out.winner = out.ranking[0].index;
  out.tie = close(out.ranking[0].bic, out.ranking[1].bic) && close(out.ranking[0].aic, out.ranking[1].aic);
  return out;
}

inline ModelComparison compare_models(std::span<const RegressionResult> results) {
  std::vector<Diagnostics> diags;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < results.size(); ++i) {
    diags.push_back(results[i].diagnostics);
    labels.push_back(results[i].label.empty() ? "Model " + std::to_string(i + 1) : results[i].label);
  }
  return compare_models(std::span<const Diagnostics>(diags), std::span<const std::string>(labels));
}

inline std::string format_comparison(const ModelComparison& c) {
  std::string out = detail::pad_right("rank", 6) + detail::pad_right("model", 16) + detail::pad_left("BIC", 14) +
                    detail::pad_left("AIC", 14) + detail::pad_left("dLL", 14) + detail::pad_left("dSSR", 14) +
                    detail::pad_left("dSER", 12) + detail::pad_left("dR2", 12) + "\n";
  for (const auto& e : c.ranking) {
    out += detail::pad_right(std::to_string(e.rank), 6) + detail::pad_right(e.label, 16) +
           detail::pad_left(detail::fmt("%.3f", e.bic), 14) + detail::pad_left(detail::fmt("%.3f", e.aic), 14) +
           detail::pad_left(detail::fmt("%.4f", e.delta_log_likelihood), 14) +
           detail::pad_left(detail::fmt("%.4f", e.delta_ssr), 14) + detail::pad_left(detail::fmt("%.6f", e.delta_ser), 12) +
           detail::pad_left(detail::fmt("%.6f", e.delta_r_squared), 12) + "\n";
  }
  out += c.tie ? "result: tie\n" : "preferred: " + c.ranking[0].label + "\n";
  return out;
}

}  // namespace endogrowth::econometrics
