// Truncated two-mode Fock-space oracle. Dense matrices are the reference
// representation at small cutoffs; state construction and expectations run on
// vectors with the same sqrt(l) index arithmetic so large cutoffs stay
// affordable (the two paths are cross-checked in the tests).

#include "magsq/fock_oracle.hpp"

#include <cmath>
#include <sstream>

#include "magsq/errors.hpp"

namespace magsq {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

LadderMatrices ladder_matrices(const FockSpace& fs) {
  if (fs.cutoff < 1) throw ConfigError("FockSpace cutoff must be >= 1");
  const int d = fs.dim();
  LadderMatrices lm{OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d),
                    OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d)};
  for (int la = 0; la <= fs.cutoff; ++la) {
    for (int lb = 0; lb <= fs.cutoff; ++lb) {
      const int col = fs.index(la, lb);
      if (la > 0) lm.a(fs.index(la - 1, lb), col) = std::sqrt(static_cast<double>(la));
      if (la < fs.cutoff) lm.a_dag(fs.index(la + 1, lb), col) = std::sqrt(la + 1.0);
      if (lb > 0) lm.b(fs.index(la, lb - 1), col) = std::sqrt(static_cast<double>(lb));
      if (lb < fs.cutoff) lm.b_dag(fs.index(la, lb + 1), col) = std::sqrt(lb + 1.0);
    }
  }
  return lm;
}

std::pair<OperatorMatrix, OperatorMatrix> hybrid_annihilators(const CompositeTransform& ct,
                                                              const FockSpace& fs) {
  const LadderMatrices lm = ladder_matrices(fs);
  OperatorMatrix eta = std::conj(ct.w) * lm.a - ct.nu * lm.b_dag;
  OperatorMatrix zeta = -ct.nu * lm.a_dag + std::conj(ct.w) * lm.b;
  return {std::move(eta), std::move(zeta)};
}

StateVector apply_a(const FockSpace& fs, const StateVector& v) {
  StateVector out = StateVector::Zero(v.size());
  for (int la = 1; la <= fs.cutoff; ++la)
    for (int lb = 0; lb <= fs.cutoff; ++lb)
      out(fs.index(la - 1, lb)) = std::sqrt(static_cast<double>(la)) * v(fs.index(la, lb));
  return out;
}

StateVector apply_a_dag(const FockSpace& fs, const StateVector& v) {
  StateVector out = StateVector::Zero(v.size());
  for (int la = 0; la < fs.cutoff; ++la)
    for (int lb = 0; lb <= fs.cutoff; ++lb)
      out(fs.index(la + 1, lb)) = std::sqrt(la + 1.0) * v(fs.index(la, lb));
  return out;
}

StateVector apply_b(const FockSpace& fs, const StateVector& v) {
  StateVector out = StateVector::Zero(v.size());
  for (int la = 0; la <= fs.cutoff; ++la)
    for (int lb = 1; lb <= fs.cutoff; ++lb)
      out(fs.index(la, lb - 1)) = std::sqrt(static_cast<double>(lb)) * v(fs.index(la, lb));
  return out;
}

StateVector apply_b_dag(const FockSpace& fs, const StateVector& v) {
  StateVector out = StateVector::Zero(v.size());
  for (int la = 0; la <= fs.cutoff; ++la)
    for (int lb = 0; lb < fs.cutoff; ++lb)
      out(fs.index(la, lb + 1)) = std::sqrt(lb + 1.0) * v(fs.index(la, lb));
  return out;
}

StateVector apply_eta(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v) {
  return std::conj(ct.w) * apply_a(fs, v) - ct.nu * apply_b_dag(fs, v);
}

StateVector apply_zeta(const CompositeTransform& ct, const FockSpace& fs, const StateVector& v) {
  return -ct.nu * apply_a_dag(fs, v) + std::conj(ct.w) * apply_b(fs, v);
}

StateVector apply_eta_dag(const CompositeTransform& ct, const FockSpace& fs,
                          const StateVector& v) {
  return ct.w * apply_a_dag(fs, v) - std::conj(ct.nu) * apply_b(fs, v);
}

StateVector apply_zeta_dag(const CompositeTransform& ct, const FockSpace& fs,
                           const StateVector& v) {
  return -std::conj(ct.nu) * apply_a(fs, v) + ct.w * apply_b_dag(fs, v);
}

StateVector embed_ground(const StateAmplitudes& amps, const FockSpace& fs) {
  StateVector v = StateVector::Zero(fs.dim());
  const int top = std::min(amps.L, fs.cutoff);
  for (int l = 0; l <= top; ++l) v(fs.index(l, l)) = amps.p[static_cast<size_t>(l)];
  return v;
}

StateVector build_excited(const CompositeTransform& ct, const FockSpace& fs, int n, int m,
                          double eps_trunc) {
  if (n < 0 || m < 0) throw std::invalid_argument("build_excited: n, m must be >= 0");
  const StateAmplitudes ground = ground_amplitudes(ct, eps_trunc);
  StateVector v = embed_ground(ground, fs);
  for (int k = 0; k < m; ++k) v = apply_zeta_dag(ct, fs, v);
  for (int k = 0; k < n; ++k) v = apply_eta_dag(ct, fs, v);
  // ||(eta+)^n (zeta+)^m |psi00>||^2 = n! m! exactly; deviation is truncation loss
  const double expected = factorial(n) * factorial(m);
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 / expected - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "build_excited: cutoff " << fs.cutoff << " too small for (n, m) = (" << n << ", "
        << m << "), ground L = " << ground.L << ", norm loss = " << 1.0 - norm2 / expected;
    throw CutoffError(msg.str());
  }
  return v / std::sqrt(norm2);
}

QuadratureStats direct_variance(const StateVector& v, const FockSpace& fs) {
  const StateVector xa = apply_a(fs, v);
  const StateVector xad = apply_a_dag(fs, v);
  const StateVector xb = apply_b(fs, v);
  const StateVector xbd = apply_b_dag(fs, v);
  const StateVector xv = 0.5 * (xa + xb + xad + xbd);
  const std::complex<double> ihalf{0.0, 0.5};
  const StateVector pv = ihalf * (xad + xbd - xa - xb);
  const double ex = v.dot(xv).real();
  const double ep = v.dot(pv).real();
  QuadratureStats stats;
  stats.var_x = xv.squaredNorm() - ex * ex;
  stats.var_p = pv.squaredNorm() - ep * ep;
  return stats;
}

double xp_cross_term(const StateVector& v, const FockSpace& fs) {
  const StateVector xa = apply_a(fs, v);
  const StateVector xad = apply_a_dag(fs, v);
  const StateVector xb = apply_b(fs, v);
  const StateVector xbd = apply_b_dag(fs, v);
  const StateVector xv = 0.5 * (xa + xb + xad + xbd);
  const std::complex<double> ihalf{0.0, 0.5};
  const StateVector pv = ihalf * (xad + xbd - xa - xb);
  const double ex = v.dot(xv).real();
  const double ep = v.dot(pv).real();
  // <{X,P}>/2 = Re<X psi|P psi> for Hermitian X, P
  return xv.dot(pv).real() - ex * ep;
}

}  // namespace magsq
