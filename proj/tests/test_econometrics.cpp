#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "endogrowth/econometrics.hpp"
#include "support/fixtures.hpp"

using namespace endogrowth;
using namespace endogrowth::econometrics;

namespace {

void expect_rel(double got, double want, double tol = 1e-3) {
  EXPECT_LE(std::fabs(got - want), tol * std::fabs(want)) << "got " << got << " want " << want;
}

PanelDataset make_panel(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                        std::size_t per_unit = 0) {
  PanelDataset p;
  for (std::size_t j = 0; j < X[0].size(); ++j) p.add_column("x" + std::to_string(j));
  p.add_column("y");
  for (std::size_t i = 0; i < X.size(); ++i) {
    Observation o;
    const std::size_t unit = per_unit ? i / per_unit : 0;
    o.country = "u" + std::to_string(1000 + unit);
    o.year = static_cast<int>(per_unit ? i % per_unit : i);
    for (std::size_t j = 0; j < X[i].size(); ++j) o.values["x" + std::to_string(j)] = X[i][j];
    o.values["y"] = y[i];
    p.observations.push_back(o);
  }
  return p;
}

RegressionSpec spec_for(std::size_t k) {
  RegressionSpec s;
  s.dependent = "y";
  for (std::size_t j = 0; j < k; ++j) s.regressors.push_back("x" + std::to_string(j));
  return s;
}

}  // namespace

TEST(Diagnostics, PrintedModel1) {
  const auto d = compute_diagnostics(600, 4, 417.2885, 9.358455, 1.046538);
  expect_rel(d.log_likelihood, -742.4176);
  expect_rel(d.aic, 1492.835);
  expect_rel(d.bic, 1510.423);
  expect_rel(d.hannan_quinn, 1499.682);
  expect_rel(d.ser, 0.836749);
  expect_rel(d.r_squared, 0.363938);
  expect_rel(d.adj_r_squared, 0.360736);
  expect_rel(d.f_statistic, 113.67);
  EXPECT_NEAR(d.f_pvalue / 3.27e-58, 1.0, 0.05);
}

TEST(Diagnostics, PrintedModels2to5) {
  const auto m2 = compute_diagnostics(600, 5, 289.9012, 9.358455, 1.046538);
  expect_rel(m2.log_likelihood, -633.1463);
  expect_rel(m2.aic, 1276.293);
  expect_rel(m2.bic, 1298.277);
  expect_rel(m2.hannan_quinn, 1284.851);
  const auto m3 = compute_diagnostics(600, 4, 226.7770, 9.358455, 1.046538);
  expect_rel(m3.ser, 0.616845);
  expect_rel(m3.r_squared, 0.654330);
  const auto m4 = compute_diagnostics(600, 5, 193.8761, 9.358455, 1.046538);
  expect_rel(m4.aic, 1034.900);
  const auto m5 = compute_diagnostics(117, 6, 28.60124, 9.774251, 1.026764);
  expect_rel(m5.ser, 0.507611);
  expect_rel(m5.r_squared, 0.766124);
  expect_rel(m5.adj_r_squared, 0.755589);
  expect_rel(m5.aic, 179.2109);
  expect_rel(m5.bic, 195.7840);
  expect_rel(m5.f_statistic, 72.72203);
}

TEST(Diagnostics, Boundaries) {
  EXPECT_THROW(compute_diagnostics(4, 4, 1.0, 0.0, 1.0), InsufficientDataError);
  const auto d = compute_diagnostics(10, 2, 0.0, 0.0, 1.0);
  EXPECT_TRUE(d.exact_fit);
  EXPECT_EQ(d.r_squared, 1.0);
  EXPECT_TRUE(std::isinf(d.log_likelihood));
  EXPECT_TRUE(std::isinf(d.aic) && d.aic < 0);
  const auto one = compute_diagnostics(10, 1, 5.0, 0.0, 1.0);
  EXPECT_TRUE(std::isnan(one.f_statistic));
}

TEST(DurbinWatson, HandComputed) {
  const std::vector<double> e = {1.0, -1.0, 2.0, 0.5};
  // diff^2: 4 + 9 + 2.25 = 15.25; total 1+1+4+0.25 = 6.25
  const auto dw = durbin_watson_rho(e, std::vector<std::size_t>{0});
  EXPECT_NEAR(dw.statistic, 15.25 / 6.25, 1e-14);
  // cross: -1 - 2 + 1 = -2 ; lag^2 = 1 + 1 + 4 = 6
  EXPECT_NEAR(dw.rho, -2.0 / 6.0, 1e-14);
}

TEST(DurbinWatson, SkipsUnitBoundaries) {
  const std::vector<double> e = {1.0, 2.0, -5.0, -4.0};
  const auto split = durbin_watson_rho(e, std::vector<std::size_t>{0, 2});
  EXPECT_NEAR(split.statistic, (1.0 + 1.0) / (1 + 4 + 25 + 16), 1e-14);
  EXPECT_THROW(durbin_watson_rho(e, std::vector<std::size_t>{0, 1, 2, 3}), UndefinedStatisticError);
  EXPECT_THROW(durbin_watson_rho(std::vector<double>{0, 0, 0}, std::vector<std::size_t>{0}), UndefinedStatisticError);
}

TEST(Ols, RecoversExactCoefficients) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    X.push_back({static_cast<double>(i), std::sin(i * 1.0)});
    y.push_back(2.0 + 0.5 * i - 3.0 * std::sin(i * 1.0));
  }
  const auto r = fit_pooled_ols(make_panel(X, y), spec_for(2));
  EXPECT_NEAR(r.coefficient("const").coefficient, 2.0, 1e-10);
  EXPECT_NEAR(r.coefficient("x0").coefficient, 0.5, 1e-12);
  EXPECT_NEAR(r.coefficient("x1").coefficient, -3.0, 1e-10);
  EXPECT_TRUE(r.diagnostics.exact_fit);
  EXPECT_NE(format_result_table(r).find("R-squared             1.000000"), std::string::npos);
}

TEST(Ols, MatchesNormalEquationsOracle) {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> kd(1, 3), nd(0, 20);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = kd(rng);
    const int n = k + 1 + 5 + nd(rng) % (30 - k - 6 + 1);
    std::vector<std::vector<double>> X(n, std::vector<double>(k));
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) X[i][j] = g(rng);
      y[i] = 1.0 + g(rng);
      for (int j = 0; j < k; ++j) y[i] += (j + 1) * X[i][j];
    }
    std::vector<std::vector<double>> Xc = X;
    for (auto& row : Xc) row.insert(row.begin(), 1.0);
    const auto oracle = fixtures::normal_equations(Xc, y);
    const auto r = fit_pooled_ols(make_panel(X, y), spec_for(k));
    for (int j = 0; j <= k; ++j) EXPECT_NEAR(r.coefficients[j].coefficient, oracle[j], 1e-8);
    for (int j = 0; j <= k; ++j) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += Xc[i][j] * r.residuals[i];
      EXPECT_NEAR(dot, 0.0, 1e-9);
    }
  }
}

TEST(Ols, StandardErrorsMatchInverseGram) {
  // y on [1, x] with x = 0..9: Var(b1) = s^2 / Sxx
  std::vector<std::vector<double>> X;
  std::vector<double> y = {1.1, 1.9, 3.2, 3.8, 5.1, 6.2, 6.8, 8.1, 9.0, 9.9};
  for (int i = 0; i < 10; ++i) X.push_back({static_cast<double>(i)});
  const auto r = fit_pooled_ols(make_panel(X, y), spec_for(1));
  const double sxx = 82.5;
  const double s2 = r.diagnostics.ssr / 8.0;
  EXPECT_NEAR(r.coefficient("x0").std_error, std::sqrt(s2 / sxx), 1e-12);
  EXPECT_NEAR(r.coefficient("const").std_error, std::sqrt(s2 * (1.0 / 10 + 4.5 * 4.5 / sxx)), 1e-12);
  const auto& b = r.coefficient("x0");
  EXPECT_NEAR(b.p_value, stats::student_t_pvalue(b.t_ratio, 8), 1e-15);
}

TEST(Ols, ResidualsSumToZeroWithIntercept) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 40; ++i) {
    X.push_back({g(rng), g(rng)});
    y.push_back(g(rng));
  }
  const auto r = fit_pooled_ols(make_panel(X, y, 8), spec_for(2));
  double s = 0.0;
  for (double e : r.residuals) s += e;
  EXPECT_NEAR(s, 0.0, 1e-10);
  EXPECT_GE(r.diagnostics.r_squared, 0.0);
  EXPECT_LE(r.diagnostics.r_squared, 1.0);
  EXPECT_LE(r.diagnostics.adj_r_squared, r.diagnostics.r_squared);
  EXPECT_EQ(r.n_units, 5u);
  EXPECT_EQ(r.time_series_description(), "Time-series length = 8");
  ASSERT_TRUE(r.diagnostics.durbin_watson.has_value());
  EXPECT_GE(*r.diagnostics.durbin_watson, 0.0);
  EXPECT_LE(*r.diagnostics.durbin_watson, 4.0);
}

TEST(Ols, ScaleInvarianceOfFit) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> X, Xs;
  std::vector<double> y;
  for (int i = 0; i < 30; ++i) {
    X.push_back({g(rng), g(rng)});
    Xs.push_back({X.back()[0] * 1e6, X.back()[1] * 1e-4});
    y.push_back(X.back()[0] - X.back()[1] + g(rng));
  }
  const auto a = fit_pooled_ols(make_panel(X, y), spec_for(2));
  const auto b = fit_pooled_ols(make_panel(Xs, y), spec_for(2));
  EXPECT_NEAR(a.diagnostics.ssr, b.diagnostics.ssr, 1e-9 * a.diagnostics.ssr);
  EXPECT_NEAR(a.coefficients[1].t_ratio, b.coefficients[1].t_ratio, 1e-8);
  EXPECT_NEAR(a.coefficients[1].coefficient, b.coefficients[1].coefficient * 1e6, 1e-8);
}

TEST(Ols, VaryingUnitLengthDescription) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 12; ++i) {
    X.push_back({static_cast<double>(i % 5), static_cast<double>((i * 7) % 3)});
    y.push_back(i * 0.3 + (i % 2));
  }
  auto p = make_panel(X, y, 4);
  p.observations.erase(p.observations.begin() + 1, p.observations.begin() + 4);  // unit 0 keeps one row
  const auto r = fit_pooled_ols(p, spec_for(2));
  EXPECT_EQ(r.time_series_description(), "Time-series length: varying (minimum 1, maximum 4)");
}

TEST(Ols, Errors) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    X.push_back({static_cast<double>(i), 2.0 * i + 1.0});
    y.push_back(i * 0.7 + (i % 3));
  }
  try {
    fit_pooled_ols(make_panel(X, y), spec_for(2));
    FAIL();
  } catch (const CollinearityError& e) {
    EXPECT_FALSE(e.columns().empty());
  }
  auto spec = spec_for(1);
  spec.regressors = {"nope"};
  try {
    fit_pooled_ols(make_panel(X, y), spec);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("available columns: x0, x1, y"), std::string::npos);
  }
  std::vector<std::vector<double>> small(2, {1.0, 2.0});
  small[1] = {3.0, 1.0};
  EXPECT_THROW(fit_pooled_ols(make_panel(small, {1.0, 2.0}), spec_for(2)), InsufficientDataError);
}

TEST(Ols, SkipsIncompleteRows) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    X.push_back({static_cast<double>(i)});
    y.push_back(i * 0.5 + (i % 2));
  }
  auto p = make_panel(X, y);
  p.observations[3].values.erase("x0");
  const auto r = fit_pooled_ols(p, spec_for(1));
  EXPECT_EQ(r.diagnostics.n, 9u);
  EXPECT_EQ(r.n_excluded, 1u);
}

TEST(Formatting, TableShape) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    X.push_back({g(rng), g(rng), g(rng)});
    y.push_back(X.back()[0] + g(rng));
  }
  auto spec = spec_for(3);
  spec.label = "Model 1";
  const auto text = format_result_table(fit_pooled_ols(make_panel(X, y, 10), spec));
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  const auto header = std::find_if(lines.begin(), lines.end(), [](const std::string& l) {
    return l.rfind("independent variable", 0) == 0;
  });
  ASSERT_NE(header, lines.end());
  EXPECT_TRUE((header + 1)->rfind("const", 0) == 0);
  EXPECT_TRUE((header + 4)->rfind("x2", 0) == 0);
  EXPECT_TRUE((header + 5)->empty());
  EXPECT_EQ(lines.end() - (header + 6), 11);
  EXPECT_TRUE(lines.back().rfind("Durbin-Watson", 0) == 0);
}

TEST(Formatting, PValuesAndStars) {
  EXPECT_EQ(format_p_value(1.24e-05), "1.24e-05");
  EXPECT_EQ(format_p_value(0.9864), "0.9864");
  EXPECT_EQ(significance_stars(0.0021), "***");
  EXPECT_EQ(significance_stars(0.0205), "**");
  EXPECT_EQ(significance_stars(0.0550), "*");
  EXPECT_EQ(significance_stars(0.157), "");
}

TEST(Compare, RanksByBicThenAic) {
  std::vector<Diagnostics> d = {compute_diagnostics(600, 4, 417.2885, 9.358455, 1.046538),
                                compute_diagnostics(600, 5, 289.9012, 9.358455, 1.046538),
                                compute_diagnostics(600, 4, 226.7770, 9.358455, 1.046538)};
  const auto c = compare_models(d);
  EXPECT_EQ(c.winner, 2u);
  EXPECT_FALSE(c.tie);
  EXPECT_EQ(c.ranking[0].label, "Model 3");
  EXPECT_LT(c.ranking[1].delta_ssr, 0.0);
  const std::vector<Diagnostics> same = {d[0], d[0]};
  EXPECT_TRUE(compare_models(same).tie);
  EXPECT_THROW(compare_models(std::span<const Diagnostics>(d.data(), 1)), ParameterError);
}

TEST(Json, ResultCarriesAllFields) {
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (int i = 0; i < 12; ++i) {
    X.push_back({static_cast<double>(i)});
    y.push_back(i + (i % 3));
  }
  const auto j = result_to_json(fit_pooled_ols(make_panel(X, y), spec_for(1)));
  for (const char* key : {"ssr", "ser", "r_squared", "adj_r_squared", "f_statistic", "f_pvalue", "log_likelihood",
                          "aic", "bic", "hannan_quinn", "durbin_watson", "rho"})
    EXPECT_TRUE(j["diagnostics"].contains(key)) << key;
  EXPECT_EQ(j["coefficients"].size(), 2u);
}
