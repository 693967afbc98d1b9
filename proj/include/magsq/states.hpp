#pragma once

#include <complex>
#include <vector>

#include "magsq/meanfield.hpp"

namespace magsq {

// Second (hybridizing) Bogoliubov pair, u_tilde^2 - v_tilde^2 = 1.
struct HybridPair {
  double u_tilde{1.0};
  double v_tilde{0.0};
  double phi{0.0};  // arg g_q
};

// Composite transform from the Kittel modes (a, b) to the hybridized
// eigenmodes (eta, zeta): (a, b+) = [[w, nu], [conj(nu), conj(w)]] (eta, zeta+),
// |w|^2 - |nu|^2 = 1.
struct CompositeTransform {
  std::complex<double> w{1.0, 0.0};
  std::complex<double> nu{0.0, 0.0};
  double r{0.0};       // squeeze parameter, tanh r = |nu|/|w|
  double varphi{0.0};  // pair-correlation phase arg(nu / conj(w))
};

// Truncated coefficient table of an eigenstate |psi_nm> in the Kittel number
// basis: sum_l p_l |l+delta; a>|l; b> (n >= m) or the a<->b mirrored layout.
// Coefficients are normalized to sum |p_l|^2 = 1; raw_norm records the
// pre-normalization sum, tail_bound the certified truncated weight.
struct StateAmplitudes {
  int n{0};
  int m{0};
  int delta{0};      // |n - m|
  int mu{0};         // min(n, m)
  std::vector<std::complex<double>> p;
  int L{0};          // highest retained index, p.size() == L + 1
  double tail_bound{0.0};
  bool offset_on_a{true};  // which mode carries the +delta offset
  double raw_norm{1.0};
};

// u~ = sqrt((eps + eps~ + E) / 2E), v~ = sqrt((eps + eps~ - E) / 2E),
// phi = arg g. Throws DegeneratePointError when E is at the softening point.
HybridPair hybridize(const RenormalizedPoint& pt);

// Literal matrix product of the two Bogoliubov matrices; top row gives
// w = conj(u) u~ + conj(v) e^{i phi} v~, nu = -conj(u) e^{-i phi} v~ - conj(v) u~.
CompositeTransform composite_transform(const BogoliubovPair& bare, const HybridPair& hyb);

// Two-mode squeezed vacuum: p_l = e^{i l varphi} tanh^l r / cosh r, truncated
// where the exact geometric tail drops below eps_trunc.
StateAmplitudes ground_amplitudes(const CompositeTransform& ct, double eps_trunc);

// Recursion table f^(mu,delta)_l for l = 0..L, built from f^(0,0)_l = 1 by
//   f^(mu,delta)_l = sqrt(l+delta) cosh^2 r f^(mu,delta-1)_l
//                    - sqrt(l+1) sinh^2 r f^(mu,delta-1)_{l+1}
//   f^(mu,0)_l     = l cosh^4 r f^(mu-1,0)_{l-1}
//                    - (2l+1) cosh^2 r sinh^2 r f^(mu-1,0)_l
//                    + (l+1) sinh^4 r f^(mu-1,0)_{l+1}
// (closed form for the first step: f^(1,0)_l = l - sinh^2 r).
std::vector<double> f_recursion(int mu, int delta, double r, int L);

// p^(n,m)_l = (1/sqrt(n! m!)) (1/conj(w))^delta (1/(conj(w) nu))^mu
//             f^(mu,delta)_l p^(0,0)_l, renormalized. Throws
// DegeneratePointError when nu = 0 with mu > 0.
StateAmplitudes eigenstate_amplitudes(const CompositeTransform& ct, int n, int m,
                                      double eps_trunc);

}  // namespace magsq
