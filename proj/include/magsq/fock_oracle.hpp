#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "magsq/quadrature.hpp"
#include "magsq/states.hpp"

namespace magsq {

// Truncated two-mode Fock space |l_a, l_b>, 0 <= l <= cutoff per mode.
// A correctness instrument, not a performance path.
struct FockSpace {
  int cutoff{1};

  int dim() const { return (cutoff + 1) * (cutoff + 1); }
  int index(int la, int lb) const { return la * (cutoff + 1) + lb; }
};

using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

struct LadderMatrices {
  OperatorMatrix a, a_dag, b, b_dag;
};

// Dense ladder matrices with the standard sqrt(l) elements.
LadderMatrices ladder_matrices(const FockSpace& fs);

// eta = conj(w) a - nu b+, zeta+ = -conj(nu) a + w b+ (unit-determinant
// inverse of the composite transform). Returns (eta, zeta) as dense matrices.
std::pair<OperatorMatrix, OperatorMatrix> hybrid_annihilators(const CompositeTransform& ct,
                                                              const FockSpace& fs);

// Ladder application by index arithmetic; identical action to the dense
// matrices without materializing them (needed at large cutoffs).
StateVector apply_a(const FockSpace& fs, const StateVector& v);
StateVector apply_a_dag(const FockSpace& fs, const StateVector& v);
StateVector apply_b(const FockSpace& fs, const StateVector& v);
StateVector apply_b_dag(const FockSpace& fs, const StateVector& v);

StateVector apply_eta(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v);
StateVector apply_zeta(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v);
StateVector apply_eta_dag(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v);
StateVector apply_zeta_dag(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v);

// Amplitude table embedded on the two-mode diagonal (plus offset).
StateVector embed_ground(const StateAmplitudes& amps, const FockSpace& fs);

// |psi_nm> by repeated operator application (eta+)^n (zeta+)^m on the embedded
// ground state, normalized. Throws CutoffError when truncation loses more than
// 1e-6 of the expected norm.
StateVector build_excited(const CompositeTransform& ct, const FockSpace& fs, int n, int m,
                          double eps_trunc = 1e-12);

// Delta^2 X, Delta^2 P by direct matrix expectation on a normalized vector.
QuadratureStats direct_variance(const StateVector& v, const FockSpace& fs);

// <{X,P}>/2 - <X><P>; vanishes for fixed-delta sector states.
double xp_cross_term(const StateVector& v, const FockSpace& fs);

}  // namespace magsq
