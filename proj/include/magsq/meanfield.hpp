#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "magsq/spinwave.hpp"

namespace magsq {

// Hartree-Fock mean-field parameters. chi counts bosonic excitations per
// sublattice site (per spin); chi_prime the intersublattice pair average.
// chi_prime is real (and <= 0) in the pairing gauge but kept complex.
struct MeanFieldParams {
  double chi{0.0};
  std::complex<double> chi_prime{0.0, 0.0};
};

struct RenormalizedPoint {
  WaveVector q;
  double eps_bare{0.0};        // bare dispersion eps_q
  double eps_tilde{0.0};       // mean-field diagonal shift
  std::complex<double> g{0.0, 0.0};  // interband coupling
  double E{0.0};               // sqrt((eps + eps_tilde)^2 - |g|^2)
};

struct SolverOptions {
  double tol{1e-10};      // meV, on max_q |E_new - E_old|
  int max_iter{200};
  double damping{0.5};    // in (0, 1]; 1 = undamped update
  // Feed the composite (w, nu) pair back into the mean-field sums instead of
  // keeping the bare (u, v). Off by default: the bare pair stays defined by
  // the quadratic Hamiltonian.
  bool renormalize_uv{false};
};

struct MeanFieldSolution {
  MeanFieldParams params;
  std::vector<RenormalizedPoint> points;  // over the BZ grid, grid order
  int iterations{0};
  double residual{0.0};
  std::vector<double> residual_history;
};

// chi  = <(|u|^2+|v|^2) n + |v|^2> / S
// chi' = -<|gamma| u v (2n + 1)> / S
// with <.> the weighted grid mean (realizes 2/N sum_q, grid size = N/2).
MeanFieldParams mean_field_sums(const ModelParams& p, const BZGrid& grid,
                                std::span<const double> occupations);

// Lambda   = -(zJ + 4K_z) S chi - zJ S Re[chi']   (q-independent)
// Lambda'_q = -zJ S (chi + conj(chi')) |gamma_q|
std::pair<double, std::complex<double>> lambda_terms(const ModelParams& p,
                                                     const MeanFieldParams& mf,
                                                     const WaveVector& q);

// eps_tilde = Lambda (|u|^2+|v|^2) - 2 Re[Lambda'_q u v]
// g = -2 Lambda conj(u) v + Lambda'_q v^2 + conj(Lambda'_q) conj(u)^2
// Throws InstabilityError when (eps + eps_tilde)^2 < |g|^2.
RenormalizedPoint renormalize(const ModelParams& p, const MeanFieldParams& mf,
                              const WaveVector& q, const BogoliubovPair& bare);

// Fixed point of {occupations from E -> chi, chi' -> Lambda, Lambda' ->
// eps_tilde, g -> new E}, seeded with E = eps, damped update. kBT = 0 needs a
// single pass (no occupation feedback).
MeanFieldSolution solve_self_consistent(const ModelParams& p, const BZGrid& grid,
                                        const SolverOptions& opts = {});

enum class SweepAxis { Temperature, Anisotropy };

struct DispersionRow {
  double arc{0.0};
  WaveVector q;
  double swept{0.0};  // value of the swept parameter (kBT or K_z)
  double E{0.0};
};

struct SolveDiagnostics {
  double swept{0.0};
  int iterations{0};
  double residual{0.0};
};

struct DispersionSweepResult {
  SweepAxis axis{SweepAxis::Temperature};
  std::vector<DispersionRow> rows;  // outer loop: swept value, inner: path point
  std::vector<SolveDiagnostics> solves;
};

// One self-consistent solve per swept value, evaluated along the path.
DispersionSweepResult dispersion_sweep(const ModelParams& base, SweepAxis axis,
                                       std::span<const double> values,
                                       const BZPath& path, int grid_n,
                                       const SolverOptions& opts = {});

}  // namespace magsq
