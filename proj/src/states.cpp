// Hybridized-mode transformation, composite Bogoliubov matrix, and the
// recursive construction of the two-mode eigenstate amplitude tables.

#include "magsq/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "magsq/errors.hpp"

namespace magsq {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::complex<double> ipow(std::complex<double> z, int k) {
  std::complex<double> out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

// Un-normalized ground coefficients e^{i l varphi} tanh^l r / cosh r.
std::vector<std::complex<double>> ground_table(double r, double varphi, int L) {
  std::vector<std::complex<double>> p(static_cast<size_t>(L) + 1);
  const double t = std::tanh(r);
  const std::complex<double> step = std::polar(1.0, varphi) * t;
  std::complex<double> cur{1.0 / std::cosh(r), 0.0};
  for (int l = 0; l <= L; ++l) {
    p[static_cast<size_t>(l)] = cur;
    cur *= step;
  }
  return p;
}

// Truncation index with exact geometric tail sum_{l>L} tanh^{2l} / cosh^2
// = tanh^{2(L+1)} <= eps_trunc.
int ground_truncation(double r, double eps_trunc) {
  const double t2 = std::tanh(r) * std::tanh(r);
  if (t2 <= 0.0) return 0;
  const int L = static_cast<int>(std::ceil(std::log(eps_trunc) / std::log(t2))) - 1;
  return std::max(0, L);
}

}  // namespace

HybridPair hybridize(const RenormalizedPoint& pt) {
  const double s = pt.eps_bare + pt.eps_tilde;
  const double E = pt.E;
  if (!(E > 1e-12 * std::max(1.0, std::abs(s)))) {
    std::ostringstream msg;
    msg << "hybridize: degenerate point, E = " << E << " at q = (" << pt.q.qx << ", "
        << pt.q.qy << ")";
    throw DegeneratePointError(msg.str());
  }
  const double ut = std::sqrt((s + E) / (2.0 * E));
  const double vt = std::sqrt(std::max(0.0, s - E) / (2.0 * E));
  return {ut, vt, std::arg(pt.g)};
}

CompositeTransform composite_transform(const BogoliubovPair& bare, const HybridPair& hyb) {
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> ephi = std::exp(i * hyb.phi);
  const std::complex<double> w =
      std::conj(bare.u) * hyb.u_tilde + std::conj(bare.v) * ephi * hyb.v_tilde;
  const std::complex<double> nu =
      -std::conj(bare.u) * std::conj(ephi) * hyb.v_tilde - std::conj(bare.v) * hyb.u_tilde;
  const double aw = std::abs(w);
  const double an = std::abs(nu);
  if (!(an < aw)) {
    std::ostringstream msg;
    msg << "composite_transform: |nu| = " << an << " >= |w| = " << aw;
    throw InvalidTransformError(msg.str());
  }
  CompositeTransform ct;
  ct.w = w;
  ct.nu = nu;
  ct.r = std::atanh(an / aw);
  // pair-correlation phase of the (eta, zeta) vacuum: p_{l+1}/p_l = nu/conj(w)
  ct.varphi = an > 0.0 ? std::arg(nu * w) : 0.0;
  return ct;
}

StateAmplitudes ground_amplitudes(const CompositeTransform& ct, double eps_trunc) {
  if (!(eps_trunc > 0.0)) throw ConfigError("eps_trunc must be > 0");
  StateAmplitudes amps;
  amps.n = amps.m = amps.delta = amps.mu = 0;
  amps.L = ground_truncation(ct.r, eps_trunc);
  amps.p = ground_table(ct.r, ct.varphi, amps.L);
  const double t2 = std::tanh(ct.r) * std::tanh(ct.r);
  amps.tail_bound = std::pow(t2, amps.L + 1);
  double raw = 0.0;
  for (const auto& c : amps.p) raw += std::norm(c);
  amps.raw_norm = raw;
  const double scale = 1.0 / std::sqrt(raw);
  for (auto& c : amps.p) c *= scale;
  return amps;
}

std::vector<double> f_recursion(int mu, int delta, double r, int L) {
  if (mu < 0 || delta < 0 || L < 0) throw std::invalid_argument("f_recursion: negative index");
  const double c2 = std::cosh(r) * std::cosh(r);
  const double s2 = std::sinh(r) * std::sinh(r);

  // source tables must extend mu + delta indices past L
  int top = L + mu + delta;
  std::vector<double> f(static_cast<size_t>(top) + 1, 1.0);
  for (int step = 0; step < mu; ++step) {
    std::vector<double> next(static_cast<size_t>(top));
    for (int l = 0; l < top; ++l) {
      double val = -(2.0 * l + 1.0) * c2 * s2 * f[static_cast<size_t>(l)] +
                   (l + 1.0) * s2 * s2 * f[static_cast<size_t>(l) + 1];
      if (l > 0) val += l * c2 * c2 * f[static_cast<size_t>(l) - 1];
      next[static_cast<size_t>(l)] = val;
    }
    f = std::move(next);
    --top;
  }
  for (int d = 1; d <= delta; ++d) {
    std::vector<double> next(static_cast<size_t>(top));
    for (int l = 0; l < top; ++l) {
      next[static_cast<size_t>(l)] = std::sqrt(l + static_cast<double>(d)) * c2 *
                                         f[static_cast<size_t>(l)] -
                                     std::sqrt(l + 1.0) * s2 * f[static_cast<size_t>(l) + 1];
    }
    f = std::move(next);
    --top;
  }
  f.resize(static_cast<size_t>(L) + 1);
  return f;
}

StateAmplitudes eigenstate_amplitudes(const CompositeTransform& ct, int n, int m,
                                      double eps_trunc) {
  if (n < 0 || m < 0) throw std::invalid_argument("eigenstate_amplitudes: n, m must be >= 0");
  if (!(eps_trunc > 0.0)) throw ConfigError("eps_trunc must be > 0");
  const int delta = std::abs(n - m);
  const int mu = std::min(n, m);
  if (mu > 0 && std::abs(ct.nu) < 1e-15 * std::abs(ct.w)) {
    throw DegeneratePointError(
        "eigenstate_amplitudes: nu = 0 with mu > 0 (non-hybridized limit has no coherent "
        "expansion)");
  }
  if (mu == 0 && delta == 0) return ground_amplitudes(ct, eps_trunc);

  const std::complex<double> pref = ipow(1.0 / std::conj(ct.w), delta) *
                                    ipow(1.0 / (std::conj(ct.w) * ct.nu), mu) /
                                    std::sqrt(factorial(n) * factorial(m));

  int L = ground_truncation(ct.r, eps_trunc) + mu + delta + 8;
  constexpr int kMaxL = 4'000'000;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto p0 = ground_table(ct.r, ct.varphi, L);
    const auto f = f_recursion(mu, delta, ct.r, L);
    StateAmplitudes amps;
    amps.n = n;
    amps.m = m;
    amps.delta = delta;
    amps.mu = mu;
    amps.offset_on_a = n >= m;
    amps.L = L;
    amps.p.resize(static_cast<size_t>(L) + 1);
    double raw = 0.0;
    for (int l = 0; l <= L; ++l) {
      const std::complex<double> c = pref * f[static_cast<size_t>(l)] * p0[static_cast<size_t>(l)];
      amps.p[static_cast<size_t>(l)] = c;
      raw += std::norm(c);
    }
    // the exact state is normalized; grow L until the retained weight covers it
    if (raw >= 1.0 - eps_trunc || L >= kMaxL) {
      amps.raw_norm = raw;
      amps.tail_bound = std::max(0.0, 1.0 - raw);
      const double scale = 1.0 / std::sqrt(raw);
      for (auto& c : amps.p) c *= scale;
      return amps;
    }
    L = static_cast<int>(L * 1.5) + 8;
  }
  throw std::runtime_error("eigenstate_amplitudes: truncation growth failed to converge");
}

}  // namespace magsq
