// Hartree-Fock reduction of the quartic magnon interactions and the
// self-consistent renormalized dispersion.
//
// The loop iterates occupations only: n_q is evaluated at the current
// renormalized E_q while the (u_q, v_q) pair stays defined by the bare
// quadratic Hamiltonian (the renormalize_uv switch feeds the composite pair
// back instead). The thermodynamic 2/N sum_q is realized as the weighted BZ
// grid mean with grid size playing N/2.

#include "magsq/meanfield.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "magsq/errors.hpp"

namespace magsq {

namespace {

// Per-point bare quantities; fixed across iterations.
struct PointTable {
  std::vector<double> m;    // |gamma_q|
  std::vector<double> eps;  // bare dispersion
  std::vector<double> u;
  std::vector<double> v;
};

PointTable build_table(const ModelParams& p, const BZGrid& grid) {
  PointTable t;
  const size_t n = grid.points.size();
  t.m.resize(n);
  t.eps.resize(n);
  t.u.resize(n);
  t.v.resize(n);
  for (size_t i = 0; i < n; ++i) {
    t.m[i] = std::abs(structure_factor(p.lattice, grid.points[i]));
    t.eps[i] = bare_dispersion(p, grid.points[i]);
    const BogoliubovPair pr = bare_bogoliubov(p, grid.points[i]);
    t.u[i] = pr.u.real();
    t.v[i] = pr.v.real();
  }
  return t;
}

// chi, chi' from a generic pair table (W, N); the bare pair enters as
// (u, -v), the composite pair as (w, nu). Plain sequential accumulation in
// grid order keeps sweeps bit-reproducible.
MeanFieldParams sums_from_pairs(double S, const std::vector<double>& m,
                                const std::vector<double>& W, const std::vector<double>& N,
                                const std::vector<double>& weights,
                                const std::vector<double>& occ) {
  double chi = 0.0;
  double chip = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    const double n = occ[i];
    chi += weights[i] * ((W[i] * W[i] + N[i] * N[i]) * n + N[i] * N[i]);
    chip += weights[i] * (m[i] * W[i] * N[i] * (2.0 * n + 1.0));
  }
  return {chi / S, {chip / S, 0.0}};
}

struct RenormScalars {
  double eps_tilde;
  double g;
  double E2;
};

RenormScalars renorm_scalars(double eps, double m, double u, double v, double lambda,
                             double lambda0) {
  const double lp = lambda0 * m;  // Lambda'_q in the pairing gauge
  const double et = lambda * (u * u + v * v) - 2.0 * lp * u * v;
  const double g = -2.0 * lambda * u * v + lp * (v * v + u * u);
  const double s = eps + et;
  return {et, g, s * s - g * g};
}

}  // namespace

MeanFieldParams mean_field_sums(const ModelParams& p, const BZGrid& grid,
                                std::span<const double> occupations) {
  if (grid.points.empty()) throw ConfigError("mean_field_sums: empty grid");
  if (occupations.size() != grid.points.size())
    throw std::invalid_argument("mean_field_sums: occupation count != grid size");
  const PointTable t = build_table(p, grid);
  std::vector<double> N(t.v.size());
  for (size_t i = 0; i < N.size(); ++i) N[i] = -t.v[i];
  std::vector<double> occ(occupations.begin(), occupations.end());
  return sums_from_pairs(p.S, t.m, t.u, N, grid.weights, occ);
}

std::pair<double, std::complex<double>> lambda_terms(const ModelParams& p,
                                                     const MeanFieldParams& mf,
                                                     const WaveVector& q) {
  const double z = p.lattice.coordination();
  const double lambda =
      -(z * p.J + 4.0 * p.Kz) * p.S * mf.chi - z * p.J * p.S * mf.chi_prime.real();
  const double m = std::abs(structure_factor(p.lattice, q));
  const std::complex<double> lp = -z * p.J * p.S * (mf.chi + std::conj(mf.chi_prime)) * m;
  return {lambda, lp};
}

RenormalizedPoint renormalize(const ModelParams& p, const MeanFieldParams& mf,
                              const WaveVector& q, const BogoliubovPair& bare) {
  const auto [lambda, lp] = lambda_terms(p, mf, q);
  const std::complex<double> u = bare.u;
  const std::complex<double> v = bare.v;
  const double eps = bare_dispersion(p, q);
  const double et = lambda * (std::norm(u) + std::norm(v)) - 2.0 * (lp * u * v).real();
  const std::complex<double> g =
      -2.0 * lambda * std::conj(u) * v + lp * v * v + std::conj(lp) * std::conj(u) * std::conj(u);
  const double s = eps + et;
  const double disc = s * s - std::norm(g);
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "renormalize: mode softening at q = (" << q.qx << ", " << q.qy
        << "), kBT = " << p.kBT << ", Kz = " << p.Kz << ": (eps + eps_tilde)^2 - |g|^2 = "
        << disc << " < 0";
    throw InstabilityError(msg.str(), q.qx, q.qy, p.kBT, p.Kz);
  }
  return {q, eps, et, g, std::sqrt(disc)};
}

MeanFieldSolution solve_self_consistent(const ModelParams& p, const BZGrid& grid,
                                        const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw ConfigError("solver.tol must be > 0");
  if (opts.max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
  if (!(opts.damping > 0.0) || opts.damping > 1.0)
    throw ConfigError("solver.damping must be in (0, 1]");
  if (grid.points.empty()) throw ConfigError("solve_self_consistent: empty grid");

  const PointTable t = build_table(p, grid);
  const size_t n = grid.points.size();

  std::vector<double> W(t.u), N(n);
  for (size_t i = 0; i < n; ++i) N[i] = -t.v[i];

  auto assemble = [&](const MeanFieldParams& mf, double lambda, double lambda0,
                      int iters, double res, std::vector<double> hist) {
    MeanFieldSolution sol;
    sol.params = mf;
    sol.points.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const RenormScalars rs = renorm_scalars(t.eps[i], t.m[i], t.u[i], t.v[i], lambda, lambda0);
      if (rs.E2 < 0.0) {
        std::ostringstream msg;
        msg << "solve_self_consistent: mode softening at q = (" << grid.points[i].qx << ", "
            << grid.points[i].qy << "), kBT = " << p.kBT << ", Kz = " << p.Kz;
        throw InstabilityError(msg.str(), grid.points[i].qx, grid.points[i].qy, p.kBT, p.Kz);
      }
      sol.points[i] = {grid.points[i], t.eps[i], rs.eps_tilde, {rs.g, 0.0}, std::sqrt(rs.E2)};
    }
    sol.iterations = iters;
    sol.residual = res;
    sol.residual_history = std::move(hist);
    return sol;
  };

  auto lambdas = [&](const MeanFieldParams& mf) {
    const double z = p.lattice.coordination();
    const double lambda =
        -(z * p.J + 4.0 * p.Kz) * p.S * mf.chi - z * p.J * p.S * mf.chi_prime.real();
    const double lambda0 = -z * p.J * p.S * (mf.chi + mf.chi_prime.real());
    return std::pair<double, double>{lambda, lambda0};
  };

  // No occupation feedback at kBT = 0: chi, chi' are E-independent, a single
  // pass lands the fixed point.
  if (p.kBT == 0.0) {
    std::vector<double> occ(n, 0.0);
    const MeanFieldParams mf = sums_from_pairs(p.S, t.m, W, N, grid.weights, occ);
    const auto [lambda, lambda0] = lambdas(mf);
    return assemble(mf, lambda, lambda0, 1, 0.0, {0.0});
  }

  std::vector<double> E(t.eps);
  std::vector<double> Enew(n), occ(n);
  std::vector<double> history;
  history.reserve(static_cast<size_t>(opts.max_iter));

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    for (size_t i = 0; i < n; ++i) occ[i] = bose_occupation(E[i], p.kBT);
    const MeanFieldParams mf = sums_from_pairs(p.S, t.m, W, N, grid.weights, occ);
    const auto [lambda, lambda0] = lambdas(mf);

    double residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const RenormScalars rs = renorm_scalars(t.eps[i], t.m[i], t.u[i], t.v[i], lambda, lambda0);
      if (rs.E2 <= 0.0) {
        std::ostringstream msg;
        msg << "solve_self_consistent: mode softening at iteration " << iter << ", q = ("
            << grid.points[i].qx << ", " << grid.points[i].qy << "), kBT = " << p.kBT
            << ", Kz = " << p.Kz << ", chi = " << mf.chi;
        throw InstabilityError(msg.str(), grid.points[i].qx, grid.points[i].qy, p.kBT, p.Kz);
      }
      Enew[i] = std::sqrt(rs.E2);
      residual = std::max(residual, std::abs(Enew[i] - E[i]));
    }
    history.push_back(residual);

    if (opts.renormalize_uv) {
      for (size_t i = 0; i < n; ++i) {
        const RenormScalars rs =
            renorm_scalars(t.eps[i], t.m[i], t.u[i], t.v[i], lambda, lambda0);
        const double s = t.eps[i] + rs.eps_tilde;
        const double g = rs.g;
        const double ut = std::sqrt((s + Enew[i]) / (2.0 * Enew[i]));
        const double vt = std::sqrt(std::max(0.0, s - Enew[i]) / (2.0 * Enew[i]));
        const double sg = g >= 0.0 ? 1.0 : -1.0;
        W[i] = t.u[i] * ut + t.v[i] * sg * vt;
        N[i] = -t.u[i] * sg * vt - t.v[i] * ut;
      }
    }

    if (residual <= opts.tol) {
      // store the fully consistent evaluation F(E): stored E equals
      // sqrt((eps + eps_tilde)^2 - |g|^2) of its own stored fields
      return assemble(mf, lambda, lambda0, iter, residual, std::move(history));
    }
    for (size_t i = 0; i < n; ++i)
      E[i] = (1.0 - opts.damping) * E[i] + opts.damping * Enew[i];
  }

  std::ostringstream msg;
  msg << "solve_self_consistent: no convergence after " << opts.max_iter
      << " iterations (kBT = " << p.kBT << ", Kz = " << p.Kz
      << ", last residual = " << history.back() << ")";
  throw ConvergenceError(msg.str(), std::move(history));
}

DispersionSweepResult dispersion_sweep(const ModelParams& base, SweepAxis axis,
                                       std::span<const double> values, const BZPath& path,
                                       int grid_n, const SolverOptions& opts) {
  DispersionSweepResult out;
  out.axis = axis;
  const BZGrid grid = bz_grid(base.lattice, grid_n);
  const auto path_points = high_symmetry_path(base.lattice, path);
  for (double value : values) {
    ModelParams p = base;
    (axis == SweepAxis::Temperature ? p.kBT : p.Kz) = value;
    const MeanFieldSolution sol = solve_self_consistent(p, grid, opts);
    out.solves.push_back({value, sol.iterations, sol.residual});
    for (const auto& pp : path_points) {
      const RenormalizedPoint pt = renormalize(p, sol.params, pp.q, bare_bogoliubov(p, pp.q));
      out.rows.push_back({pp.arc, pp.q, value, pt.E});
    }
  }
  return out;
}

}  // namespace magsq
