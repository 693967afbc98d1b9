// Quadrature variances of the total mode Sigma = (a + b)/sqrt(2), squeeze and
// stretch factors, finite-difference squeezing rates and energy correlations.

#include "magsq/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "magsq/errors.hpp"

namespace magsq {

QuadratureStats variance_xp(const StateAmplitudes& amps) {
  const int L = amps.L;
  const double delta = amps.delta;
  const auto& p = amps.p;
  auto at = [&](int l) -> std::complex<double> {
    return l <= L ? p[static_cast<size_t>(l)] : std::complex<double>{0.0, 0.0};
  };

  double sx = std::norm(p[0]) * delta;
  double sp = sx;
  for (int l = 0; l <= L; ++l) {
    const double ra = std::sqrt(l + delta + 1.0);
    const double rb = std::sqrt(l + 1.0);
    sx += std::norm(at(l + 1) * ra + at(l) * rb);
    sx += std::norm(at(l + 1) * rb + at(l) * ra);
    sp += std::norm(at(l + 1) * ra - at(l) * rb);
    sp += std::norm(at(l + 1) * rb - at(l) * ra);
  }

  QuadratureStats stats;
  stats.var_x = sx / 4.0;
  stats.var_p = sp / 4.0;
  const double tail_err = (2.0 * L + delta + 3.0) * amps.tail_bound;
  stats.err_x = tail_err;
  stats.err_p = tail_err;
  stats.n = amps.n;
  stats.m = amps.m;
  return stats;
}

double variance_polar(const QuadratureStats& stats, double nu_angle) {
  const double c = std::cos(nu_angle);
  const double s = std::sin(nu_angle);
  return c * c * stats.var_x + s * s * stats.var_p;
}

const char* factor_kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::OX: return "OX";
    case FactorKind::O_T_X: return "O_T_X";
    case FactorKind::O_Kz_P: return "O_Kz_P";
    case FactorKind::O_Kz_X: return "O_Kz_X";
    case FactorKind::O_T_P: return "O_T_P";
    case FactorKind::O_T_E: return "O_T_E";
    case FactorKind::O_Kz_E: return "O_Kz_E";
  }
  return "?";
}

double squeeze_factor(double current, double reference) {
  if (!(current > 0.0) || !(reference > 0.0))
    throw std::domain_error("squeeze_factor: inputs must be > 0");
  return -10.0 * std::log10(current / reference);
}

std::vector<double> squeezing_rate(std::span<const double> axis,
                                   std::span<const double> values) {
  const size_t n = axis.size();
  if (n != values.size()) throw ConfigError("squeezing_rate: axis/value size mismatch");
  if (n < 3) throw ConfigError("squeezing_rate: need >= 3 samples");
  const bool inc = axis[1] > axis[0];
  for (size_t i = 0; i + 1 < n; ++i) {
    const bool step_inc = axis[i + 1] > axis[i];
    if (axis[i + 1] == axis[i] || step_inc != inc)
      throw ConfigError("squeezing_rate: axis samples must be strictly monotone");
  }
  std::vector<double> rate(n);
  rate[0] = (values[1] - values[0]) / (axis[1] - axis[0]);
  for (size_t i = 1; i + 1 < n; ++i)
    rate[i] = (values[i + 1] - values[i - 1]) / (axis[i + 1] - axis[i - 1]);
  rate[n - 1] = (values[n - 1] - values[n - 2]) / (axis[n - 1] - axis[n - 2]);
  return rate;
}

CorrelationResult energy_correlation(std::span<const double> o_squeeze,
                                     std::span<const double> o_energy) {
  const size_t n = o_squeeze.size();
  if (n != o_energy.size()) throw ConfigError("energy_correlation: size mismatch");
  if (n < 3) throw ConfigError("energy_correlation: need >= 3 pairs");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += o_squeeze[i];
    my += o_energy[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = o_squeeze[i] - mx;
    const double dy = o_energy[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw UndefinedCorrelationError("energy_correlation: zero variance in a column");
  CorrelationResult out;
  out.pairs.reserve(n);
  for (size_t i = 0; i < n; ++i) out.pairs.push_back({o_squeeze[i], o_energy[i]});
  out.pearson = sxy / std::sqrt(sxx * syy);
  return out;
}

}  // namespace magsq
