// Linear spin-wave layer: classical energy, bare dispersion, first Bogoliubov
// transformation and Bose occupations.

#include "magsq/spinwave.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "magsq/errors.hpp"

namespace magsq {

void ModelParams::validate() const {
  lattice.validate();
  if (!(S > 0.0)) throw ConfigError("model.S must be > 0");
  if (!(J > 0.0)) throw ConfigError("model.J must be > 0");
  if (Kz < 0.0) throw ConfigError("model.Kz must be >= 0");
  if (kBT < 0.0) throw ConfigError("model.kBT must be >= 0");
}

double classical_ground_energy(const ModelParams& p, long long n_sites) {
  if (n_sites < 0 || n_sites % 2 != 0)
    throw std::invalid_argument("classical_ground_energy: N must be even and >= 0");
  const double z = p.lattice.coordination();
  return -static_cast<double>(n_sites) * (z * p.J / 2.0 + p.Kz) * p.S * p.S;
}

double bare_dispersion(const ModelParams& p, const WaveVector& q) {
  const double z = p.lattice.coordination();
  const double m = std::abs(structure_factor(p.lattice, q));
  const double hi = z * p.J + 2.0 * p.Kz;
  const double lo = z * p.J * m;
  // product form keeps accuracy near the gap (hi - lo small at |gamma| -> 1)
  return p.S * std::sqrt(std::max(0.0, (hi - lo) * (hi + lo)));
}

BogoliubovPair bare_bogoliubov(const ModelParams& p, const WaveVector& q) {
  const double z = p.lattice.coordination();
  const double eps = bare_dispersion(p, q);
  if (eps < 1e-12 * p.S * z * p.J) {
    throw DegeneratePointError("bare_bogoliubov: eps_q ~ 0 at q = (" + std::to_string(q.qx) +
                               ", " + std::to_string(q.qy) +
                               "), Bogoliubov coefficients diverge (K_z -> 0 Goldstone point)");
  }
  const double A = p.S * (z * p.J + 2.0 * p.Kz);
  const double u = std::sqrt((A + eps) / (2.0 * eps));
  const double v = std::sqrt(std::max(0.0, A - eps) / (2.0 * eps));
  return {{u, 0.0}, {v, 0.0}, std::asinh(v)};
}

double bose_occupation(double energy, double kBT) {
  if (!(energy > 0.0)) throw std::domain_error("bose_occupation: energy must be > 0");
  if (kBT < 0.0) throw std::domain_error("bose_occupation: kBT must be >= 0");
  if (kBT == 0.0) return 0.0;
  const double x = energy / kBT;
  if (x > 700.0) return 0.0;  // below double underflow anyway
  return 1.0 / std::expm1(x);
}

}  // namespace magsq
