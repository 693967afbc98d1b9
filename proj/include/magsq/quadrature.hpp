#pragma once

#include <array>
#include <span>
#include <vector>

#include "magsq/states.hpp"

namespace magsq {

// Variances of the conjugate quadratures X, P of the total mode
// Sigma = (a + b)/sqrt(2). err_* bound the truncation-tail contribution.
struct QuadratureStats {
  double var_x{0.5};
  double var_p{0.5};
  double err_x{0.0};
  double err_p{0.0};
  int n{0};
  int m{0};
  WaveVector q;
};

QuadratureStats variance_xp(const StateAmplitudes& amps);

// cos^2(nu) var_x + sin^2(nu) var_p.
double variance_polar(const QuadratureStats& stats, double nu_angle);

enum class FactorKind { OX, O_T_X, O_Kz_P, O_Kz_X, O_T_P, O_T_E, O_Kz_E };

const char* factor_kind_name(FactorKind kind);

struct FactorReport {
  FactorKind kind{FactorKind::OX};
  double value{0.0};  // decibel-like, -10 log10(current/reference)
  double Kz{0.0};
  double kBT{0.0};
  WaveVector q;
  int n{0};
  int m{0};
};

// -10 log10(current / reference); positive means squeezing relative to the
// reference. For OX the reference is the vacuum value 1/2. Throws
// std::domain_error on non-positive inputs.
double squeeze_factor(double current, double reference);

// Finite-difference slope of values over axis: central differences on
// interior points, one-sided at the ends. Requires >= 3 strictly monotone
// axis samples (ConfigError otherwise).
std::vector<double> squeezing_rate(std::span<const double> axis,
                                   std::span<const double> values);

struct CorrelationResult {
  std::vector<std::array<double, 2>> pairs;  // (O_squeeze, O_energy)
  double pearson{0.0};
};

// Pearson correlation of squeeze-factor / energy-factor pairs. Requires >= 3
// pairs; throws UndefinedCorrelationError on zero variance in either column.
CorrelationResult energy_correlation(std::span<const double> o_squeeze,
                                     std::span<const double> o_energy);

}  // namespace magsq
