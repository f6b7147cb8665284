#pragma once

// Production functions, endogenous technology indices and human-capital
// depreciation. Everything here is a pure function of its arguments.

#include <cmath>
#include <string>
#include <string_view>

#include "endogrowth/errors.hpp"

namespace endogrowth {

struct ModelParams {
  double alpha = 0.3333;  // capital income share
  double delta = 0.02;    // capital depreciation per period
  double g = 0.03;        // technology trend inside ln(n + g + delta)

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    if (!(delta >= 0.0)) throw ParameterError("delta must be >= 0");
    if (!(g >= 0.0)) throw ParameterError("g must be >= 0");
  }
};

enum class ProductionMode { Linear, CobbDouglas };

inline std::string_view to_string(ProductionMode mode) {
  return mode == ProductionMode::Linear ? "linear" : "cobb-douglas";
}

inline ProductionMode parse_production_mode(std::string_view text) {
  if (text == "linear") return ProductionMode::Linear;
  if (text == "cobb-douglas" || text == "cobb_douglas" || text == "cd") return ProductionMode::CobbDouglas;
  throw ParameterError("unknown production mode '" + std::string(text) + "' (expected linear or cobb-douglas)");
}

/// A factor (labor heads or capital units) divided between production and research.
struct FactorSplit {
  double total = 0.0;
  double research_fraction = 0.0;
  double production = 0.0;
  double research = 0.0;
};

inline void check_research_fraction(double fraction, std::string_view name) {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw ParameterError(std::string(name) + " must lie in [0, 1), got " + std::to_string(fraction));
}

inline FactorSplit split_factor(double total, double research_fraction) {
  check_research_fraction(research_fraction, "research fraction");
  if (!(total >= 0.0)) throw ParameterError("factor total must be >= 0");
  FactorSplit split;
  split.total = total;
  split.research_fraction = research_fraction;
  split.research = total * research_fraction;
  split.production = total - split.research;
  return split;
}

/// Depreciation exponent d = sqrt(ln H / H) applied to human capital.
/// Defined for H >= 1 only; below that the radicand is negative.
inline double depreciation_rate(double human_capital) {
  if (!(human_capital > 0.0))
    throw DomainError("depreciation_rate: human capital must be positive, got " + std::to_string(human_capital));
  if (human_capital < 1.0)
    throw DomainError("depreciation_rate: negative radicand for human capital " + std::to_string(human_capital) +
                      " < 1");
  const double log_h = std::log(human_capital);
  return std::sqrt(log_h / human_capital);
}

/// H^d. Peaks at H = e^3, the point past which more schooling lowers it.
inline double effective_human_capital(double human_capital) {
  const double d = depreciation_rate(human_capital);
  return std::exp(d * std::log(human_capital));
}

inline void require_nonnegative(double value, std::string_view name) {
  if (!(value >= 0.0)) throw ParameterError(std::string(name) + " must be >= 0, got " + std::to_string(value));
}

// Population x Incentives x Ideas per hour.
inline double technology_a1(double population, double incentives, double ideas_per_hour) {
  require_nonnegative(population, "population");
  require_nonnegative(incentives, "incentives");
  require_nonnegative(ideas_per_hour, "ideas_per_hour");
  return population * incentives * ideas_per_hour;
}

// 1 + Researchers x Incentives x Ideas per capita.
inline double technology_a2(double researchers, double incentives, double ideas_per_capita) {
  require_nonnegative(researchers, "researchers");
  require_nonnegative(incentives, "incentives");
  require_nonnegative(ideas_per_capita, "ideas_per_capita");
  return 1.0 + researchers * incentives * ideas_per_capita;
}

/// Human-capital-augmented technology index
///   A = 1 + (P * L_research * K_research) * H / L.
inline double technology_a3(double patents, double labor_research, double capital_research, double human_capital,
                            double labor_total) {
  require_nonnegative(patents, "patents");
  require_nonnegative(labor_research, "labor_research");
  require_nonnegative(capital_research, "capital_research");
  require_nonnegative(human_capital, "human_capital");
  if (labor_total == 0.0) throw DomainError("technology_a3: division by zero labor force");
  if (!(labor_total > 0.0)) throw ParameterError("labor_total must be > 0");
  return 1.0 + (patents * labor_research * capital_research) * human_capital / labor_total;
}

enum class TechnologyVariant { A1, A2, A3 };

/// Inputs for one of the three technology formulas. Fields not used by the
/// selected variant are ignored.
struct TechnologySpec {
  TechnologyVariant variant = TechnologyVariant::A3;
  // A1 / A2
  double population = 0.0;
  double researchers = 0.0;
  double incentives = 0.0;
  double ideas_per_hour = 0.0;
  double ideas_per_capita = 0.0;
  // A3
  double patents = 0.0;
  double labor_research = 0.0;
  double capital_research = 0.0;
  double human_capital = 1.0;
  double labor_total = 1.0;
};

inline double technology(const TechnologySpec& spec) {
  switch (spec.variant) {
    case TechnologyVariant::A1:
      return technology_a1(spec.population, spec.incentives, spec.ideas_per_hour);
    case TechnologyVariant::A2:
      return technology_a2(spec.researchers, spec.incentives, spec.ideas_per_capita);
    case TechnologyVariant::A3:
      return technology_a3(spec.patents, spec.labor_research, spec.capital_research, spec.human_capital,
                           spec.labor_total);
  }
  throw ParameterError("unknown technology variant");
}

struct EconomyInputs {
  double technology = 1.0;
  double human_capital = 1.0;
  double labor = 1.0;
  double capital = 0.0;

  void validate() const {
    if (!(labor > 0.0)) throw ParameterError("labor must be > 0");
    if (!(human_capital > 0.0)) throw ParameterError("human capital must be > 0");
    if (!(capital >= 0.0)) throw ParameterError("capital must be >= 0");
  }
};

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

// Y = A * L^(1-alpha) * K^alpha
inline double output_classic(double technology, double labor, double capital, double alpha) {
  check_alpha(alpha);
  if (!(labor > 0.0)) throw ParameterError("labor must be > 0");
  require_nonnegative(capital, "capital");
  return technology * std::pow(labor, 1.0 - alpha) * std::pow(capital, alpha);
}

// Y = A * (H*L)^(1-alpha) * K^alpha
inline double output_augmented(double technology, double human_capital, double labor, double capital, double alpha) {
  EconomyInputs{technology, human_capital, labor, capital}.validate();
  check_alpha(alpha);
  return technology * std::pow(human_capital * labor, 1.0 - alpha) * std::pow(capital, alpha);
}

inline double output_augmented(const EconomyInputs& in, double alpha) {
  return output_augmented(in.technology, in.human_capital, in.labor, in.capital, alpha);
}

/// Result of the research-split production function, with the intermediate
/// quantities callers usually want to report alongside Y.
struct DynamicOutput {
  double output = 0.0;
  double technology = 1.0;
  double labor_production = 0.0;
  double capital_production = 0.0;
  double labor_research = 0.0;
  double capital_research = 0.0;
};

/// Output of an economy that diverts fractions of labor and capital to research.
///
/// CobbDouglas:  Y = A3(P, Lr, Kr, H, L) * H^d * (L - Lr)^(1-alpha) * (K - Kr)^alpha
/// Linear:       Y = [1 + P*Lr*Kr/L] * H * (L - Lr) * (K - Kr)
///
/// The linear form has no diminishing returns and no H inside A.
inline DynamicOutput output_dynamic(double patents, double labor, double capital, double human_capital,
                                    double phi_labor, double phi_capital, double alpha, ProductionMode mode) {
  check_research_fraction(phi_labor, "phi_L");
  check_research_fraction(phi_capital, "phi_K");
  check_alpha(alpha);
  if (!(labor > 0.0)) throw ParameterError("labor must be > 0");
  require_nonnegative(capital, "capital");
  require_nonnegative(patents, "patents");

  const FactorSplit l = split_factor(labor, phi_labor);
  const FactorSplit k = split_factor(capital, phi_capital);

  DynamicOutput out;
  out.labor_production = l.production;
  out.capital_production = k.production;
  out.labor_research = l.research;
  out.capital_research = k.research;

  if (mode == ProductionMode::Linear) {
    require_nonnegative(human_capital, "human_capital");
    out.technology = technology_a3(patents, l.research, k.research, 1.0, labor);
    out.output = out.technology * human_capital * l.production * k.production;
  } else {
    out.technology = technology_a3(patents, l.research, k.research, human_capital, labor);
    out.output = out.technology * effective_human_capital(human_capital) * std::pow(l.production, 1.0 - alpha) *
                 std::pow(k.production, alpha);
  }
  return out;
}

}  // namespace endogrowth
