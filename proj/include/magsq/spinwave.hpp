#pragma once

#include <complex>

#include "magsq/lattice.hpp"

namespace magsq {

// Physical inputs. Energies (J, K_z, kBT) in meV throughout.
struct ModelParams {
  double S{1.0};
  double J{1.0};
  double Kz{0.01};
  double kBT{1.0};
  LatticeSpec lattice{};

  void validate() const;  // J > 0, Kz >= 0, kBT >= 0, S > 0
};

// (u, v) hyperbolic pair diagonalizing the quadratic Hamiltonian,
// |u|^2 - |v|^2 = 1. All pair quantities are computed in the per-q gauge that
// makes the sublattice pairing amplitude real non-negative (the structure
// factor enters through its modulus), so u = cosh(theta) >= 1 and
// v = sinh(theta) >= 0 come out real; the fields stay complex because the
// downstream transform algebra is phase-generic.
struct BogoliubovPair {
  std::complex<double> u{1.0, 0.0};
  std::complex<double> v{0.0, 0.0};
  double theta{0.0};
};

// E0 = -N (zJ/2 + K_z) S^2. N must be even (two sublattices).
double classical_ground_energy(const ModelParams& p, long long n_sites);

// eps_q = S sqrt((zJ + 2K_z)^2 - (zJ |gamma_q|)^2) >= 0.
double bare_dispersion(const ModelParams& p, const WaveVector& q);

// Throws DegeneratePointError when eps_q < 1e-12 * S * zJ (Goldstone point).
BogoliubovPair bare_bogoliubov(const ModelParams& p, const WaveVector& q);

// n = 1/(exp(energy/kBT) - 1); exactly 0 at kBT = 0. Requires energy > 0.
double bose_occupation(double energy, double kBT);

}  // namespace magsq
