// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is nonzero when any
// criterion fails. Failing cells are listed with their diagnostics; the
// mean-field thermal stability edge at the default parameter scale
// (S = 1, J = 1 meV) is the known blocker for the high-temperature cells.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magsq/config.hpp"
#include "magsq/errors.hpp"
#include "magsq/figures.hpp"
#include "magsq/fock_oracle.hpp"

using namespace magsq;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d (%s): %s [%.1f s]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

CompositeTransform real_transform(double r) {
  BogoliubovPair bare{{std::cosh(r), 0.0}, {std::sinh(r), 0.0}, r};
  return composite_transform(bare, HybridPair{1.0, 0.0, 0.0});
}

double g_min_uncertainty = 1e300;

void track_uncertainty(const QuadratureStats& s) {
  g_min_uncertainty = std::min(g_min_uncertainty, s.var_x * s.var_p);
}

// shared evaluator over the default 64x64 configuration
RunConfig acceptance_config() {
  RunConfig cfg = parse_config("");
  cfg.workers = 0;
  return cfg;
}

const std::vector<double> kTLadder = {0.2, 0.6, 1.0, 1.4, 1.8};
const std::vector<double> kKLadder = {0.01, 0.05, 0.1, 0.2};

void criterion_1(FigureRunner& runner) {
  Stopwatch timer;
  // ladder values are not pinned by the criterion; chosen inside the region
  // where the self-consistent solve exists at the default parameter scale
  const std::vector<double> temps = {0.1, 0.35, 0.6, 0.85, 1.1};
  const std::vector<double> kzs = {0.005, 0.05, 0.1, 0.15, 0.2};
  std::vector<std::pair<double, double>> pairs;
  for (double T : temps)
    for (double K : kzs) pairs.push_back({T, K});

  double dev = 0.0;
  std::string error;
  try {
    runner.prefetch(pairs);
    const RunConfig cfg = acceptance_config();
    for (const auto& [T, K] : pairs) {
      ModelParams p = cfg.model;
      p.kBT = T;
      p.Kz = K;
      const MeanFieldSolution& sol = runner.solution(T, K);
      for (const auto& pt : sol.points) {
        const BogoliubovPair bare = bare_bogoliubov(p, pt.q);
        dev = std::max(dev, std::abs(std::norm(bare.u) - std::norm(bare.v) - 1.0));
        const HybridPair hyb = hybridize(pt);
        dev = std::max(dev,
                       std::abs(hyb.u_tilde * hyb.u_tilde - hyb.v_tilde * hyb.v_tilde - 1.0));
        const CompositeTransform ct = composite_transform(bare, hyb);
        dev = std::max(dev, std::abs(std::norm(ct.w) - std::norm(ct.nu) - 1.0));
      }
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double sec = timer.seconds();
  const bool pass = error.empty() && dev <= 1e-10 && sec < 10.0;
  report(1, "symplectic identities", pass,
         error.empty() ? "max deviation " + fmt(dev) + " over 64x64 grid x 5 T x 5 Kz (tol 1e-10)"
                       : error,
         sec);
}

void criterion_2() {
  Stopwatch timer;
  double dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double r = 1.6 * i / 19.0;
    const QuadratureStats s = variance_xp(ground_amplitudes(real_transform(r), 1e-12));
    track_uncertainty(s);
    dev = std::max(dev, std::abs(s.var_x - std::exp(-2.0 * r) / 2.0));
    dev = std::max(dev, std::abs(s.var_p - std::exp(2.0 * r) / 2.0));
  }
  const double sec = timer.seconds();
  report(2, "squeezed-vacuum closed form", dev <= 1e-9 && sec < 1.0,
         "max |variance - exp(-+2r)/2| = " + fmt(dev) + " (tol 1e-9)", sec);
}

void criterion_3() {
  Stopwatch timer;
  const double eps_trunc = 1e-10;  // keeps ground L + n + m + 4 within cutoff 80
  const FockSpace fock{80};
  double dev_amp = 0.0;
  double dev_var = 0.0;
  for (double r : {0.3, 0.8, 1.2}) {
    const CompositeTransform ct = real_transform(r);
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
      const StateAmplitudes amps = eigenstate_amplitudes(ct, n, m, eps_trunc);
      const StateVector v = build_excited(ct, fock, n, m, eps_trunc);
      for (int l = 0; l <= std::min(amps.L, fock.cutoff - amps.delta); ++l) {
        const int la = amps.offset_on_a ? l + amps.delta : l;
        const int lb = amps.offset_on_a ? l : l + amps.delta;
        dev_amp = std::max(dev_amp,
                           std::abs(amps.p[static_cast<size_t>(l)] - v(fock.index(la, lb))));
      }
      const QuadratureStats ours = variance_xp(amps);
      const QuadratureStats direct = direct_variance(v, fock);
      track_uncertainty(ours);
      dev_var = std::max(dev_var, std::abs(ours.var_x - direct.var_x));
      dev_var = std::max(dev_var, std::abs(ours.var_p - direct.var_p));
    }
  }
  const double sec = timer.seconds();
  report(3, "truncated-Fock oracle equivalence", dev_amp <= 1e-8 && dev_var <= 1e-7 && sec < 60.0,
         "per-coefficient " + fmt(dev_amp) + " (tol 1e-8), variance " + fmt(dev_var) +
             " (tol 1e-7), cutoff 80",
         sec);
}

// criteria 6/7 share the ladder evaluations; cache the outcomes
struct LadderPoint {
  bool ok{false};
  double E{0.0};
  QuadratureStats stats;
  std::string error;
};

LadderPoint eval_gamma(FigureRunner& runner, double T, double K) {
  LadderPoint out;
  try {
    out.stats = runner.gamma_stats(T, K, 0, 0);
    out.E = runner.gamma_energy(T, K);
    out.ok = true;
    track_uncertainty(out.stats);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void criteria_5_to_9(FigureRunner& runner) {
  const RunConfig cfg = acceptance_config();
  const BZGrid grid = bz_grid(cfg.model.lattice, cfg.grid_n);

  // ---- criterion 5: fixed-point quality and box convergence
  {
    Stopwatch timer;
    std::vector<std::string> bad;
    double worst_move = 0.0;
    const std::vector<double> box_T = {0.1, 0.575, 1.05, 1.525, 2.0};
    const std::vector<double> box_K = {0.005, 0.07, 0.135, 0.2};
    for (double T : box_T) {
      for (double K : box_K) {
        ModelParams p = cfg.model;
        p.kBT = T;
        p.Kz = K;
        try {
          const MeanFieldSolution sol = solve_self_consistent(p, grid, cfg.solver);
          // one extra loop body may move no E_q by more than the tolerance
          std::vector<double> occ(sol.points.size());
          for (size_t i = 0; i < occ.size(); ++i)
            occ[i] = bose_occupation(sol.points[i].E, p.kBT);
          const MeanFieldParams mf = mean_field_sums(p, grid, occ);
          double moved = 0.0;
          for (size_t i = 0; i < sol.points.size(); ++i) {
            const RenormalizedPoint pt =
                renormalize(p, mf, grid.points[i], bare_bogoliubov(p, grid.points[i]));
            moved = std::max(moved, std::abs(pt.E - sol.points[i].E));
          }
          worst_move = std::max(worst_move, moved);
        } catch (const std::exception&) {
          bad.push_back("(" + fmt(T) + "," + fmt(K) + ")");
        }
      }
    }
    std::string detail;
    bool pass = bad.empty() && worst_move <= 1e-10;
    if (pass) {
      detail = "box converged, worst extra-iteration move " + fmt(worst_move) + " meV";
    } else {
      detail = "extra-iteration move " + fmt(worst_move) + " meV; unstable/unconverged cells:";
      for (const auto& cell : bad) detail += " " + cell;
      detail += " | thermal collapse of the Neel mean field above T*(Kz)";
    }
    report(5, "self-consistency over the parameter box", pass, detail, timer.seconds());
  }

  // ---- criteria 6 and 7 ladders
  Stopwatch timer67;
  std::vector<LadderPoint> t_ladder, k_ladder;
  for (double T : kTLadder) t_ladder.push_back(eval_gamma(runner, T, 0.01));
  for (double K : kKLadder) k_ladder.push_back(eval_gamma(runner, 1.0, K));
  const double sec67 = timer67.seconds();

  {
    bool pass = true;
    std::string detail;
    for (size_t i = 0; i < t_ladder.size(); ++i) {
      if (!t_ladder[i].ok) {
        pass = false;
        detail += " E_G(T=" + fmt(kTLadder[i]) + ") unstable;";
      } else if (i > 0 && t_ladder[i - 1].ok && !(t_ladder[i].E < t_ladder[i - 1].E)) {
        pass = false;
        detail += " E_G not decreasing at T=" + fmt(kTLadder[i]) + ";";
      }
    }
    bool k_ok = true;
    for (size_t i = 1; i < k_ladder.size(); ++i)
      k_ok = k_ok && k_ladder[i].ok && k_ladder[i - 1].ok &&
             k_ladder[i].E > k_ladder[i - 1].E;
    if (!k_ok) {
      pass = false;
      detail += " Kz ladder not increasing;";
    } else {
      detail += " Kz ladder strictly increasing ok;";
    }
    report(6, "dispersion trends (Fig 1/2)", pass, detail, sec67);
  }

  {
    bool pass = true;
    std::string detail;
    auto trend = [&](auto get, const std::vector<LadderPoint>& ladder, bool want_increase,
                     const std::string& label) {
      for (size_t i = 1; i < ladder.size(); ++i) {
        if (!ladder[i].ok || !ladder[i - 1].ok) {
          pass = false;
          detail += " " + label + " blocked by instability;";
          return;
        }
        const double a = get(ladder[i - 1]);
        const double b = get(ladder[i]);
        if (want_increase ? !(b > a) : !(b < a)) {
          pass = false;
          detail += " " + label + " trend violated;";
          return;
        }
      }
      detail += " " + label + " ok;";
    };
    trend([](const LadderPoint& p) { return p.stats.var_x; }, t_ladder, false, "var_x(T) down");
    trend([](const LadderPoint& p) { return p.stats.var_p; }, t_ladder, true, "var_p(T) up");
    trend([](const LadderPoint& p) { return p.stats.var_x; }, k_ladder, true, "var_x(Kz) up");
    trend([](const LadderPoint& p) { return p.stats.var_p; }, k_ladder, false, "var_p(Kz) down");
    report(7, "conjugate squeezing at the zone center (Fig 4/5)", pass, detail, sec67);
  }

  // ---- criterion 8: rate structure
  {
    Stopwatch timer;
    bool pass = true;
    std::string detail;
    // anisotropy part at kBT = 1
    {
      std::vector<double> ks, vp;
      for (int i = 0; i < 7; ++i) ks.push_back(0.02 + (0.2 - 0.02) * i / 6.0);
      bool ok = true;
      for (double K : ks) {
        const LadderPoint lp = eval_gamma(runner, 1.0, K);
        if (!lp.ok) {
          ok = false;
          break;
        }
        vp.push_back(lp.stats.var_p);
      }
      if (ok) {
        const auto rate = squeezing_rate(ks, vp);
        for (size_t i = 1; i < rate.size(); ++i)
          if (!(std::abs(rate[i]) < std::abs(rate[i - 1]))) {
            pass = false;
            detail += " |dvar_p/dKz| not decreasing at i=" + std::to_string(i) + ";";
          }
        if (pass) detail += " |dvar_p/dKz| decreasing ok;";
      } else {
        pass = false;
        detail += " Kz rate ladder unstable;";
      }
    }
    // temperature part at Kz = 0.01 over [0.3, 1.8]
    {
      std::vector<double> ts, vx;
      bool ok = true;
      std::string blocker;
      for (int i = 0; i < 6; ++i) ts.push_back(0.3 + (1.8 - 0.3) * i / 5.0);
      for (double T : ts) {
        const LadderPoint lp = eval_gamma(runner, T, 0.01);
        if (!lp.ok) {
          ok = false;
          blocker = "T=" + fmt(T);
          break;
        }
        vx.push_back(lp.stats.var_x);
      }
      if (ok) {
        const auto rate = squeezing_rate(ts, vx);
        for (size_t i = 1; i < rate.size(); ++i)
          if (!(std::abs(rate[i]) > std::abs(rate[i - 1]))) {
            pass = false;
            detail += " |dvar_x/dT| not increasing;";
          }
        if (pass) detail += " |dvar_x/dT| increasing ok;";
      } else {
        pass = false;
        detail += " T rate ladder unstable from " + blocker + ";";
      }
    }
    report(8, "squeezing-rate structure (Fig 8)", pass, detail, timer.seconds());
  }

  // ---- criterion 9: factor correlations
  {
    Stopwatch timer;
    bool pass = true;
    std::string detail;
    const RunConfig acfg = acceptance_config();
    // temperature part over the criterion-6 T ladder
    {
      std::vector<double> otx, ote;
      bool ok = true;
      std::string blocker;
      try {
        const LadderPoint ref = eval_gamma(runner, acfg.T_floor, 0.01);
        if (!ref.ok) throw std::runtime_error(ref.error);
        for (double T : kTLadder) {
          const LadderPoint lp = eval_gamma(runner, T, 0.01);
          if (!lp.ok) {
            ok = false;
            blocker = lp.error;
            break;
          }
          otx.push_back(squeeze_factor(lp.stats.var_x, ref.stats.var_x));
          ote.push_back(squeeze_factor(lp.E, ref.E));
        }
        if (ok) {
          const double r = energy_correlation(otx, ote).pearson;
          if (r > 0.9)
            detail += " Pearson(O_T X, O_T E) = " + fmt(r) + " ok;";
          else {
            pass = false;
            detail += " Pearson(O_T X, O_T E) = " + fmt(r) + " <= 0.9;";
          }
        } else {
          pass = false;
          detail += " T ladder blocked (" + blocker.substr(0, 60) + "...);";
        }
      } catch (const std::exception& e) {
        pass = false;
        detail += std::string(" T part error: ") + e.what() + ";";
      }
    }
    // anisotropy part at kBT = 1, excluding Kz < 0.005
    {
      try {
        std::vector<double> okp, oke;
        const LadderPoint ref = eval_gamma(runner, 1.0, acfg.K_floor);
        if (!ref.ok)
          throw InstabilityError("K_floor reference at kBT = 1 is past the zone-center "
                                 "stability edge: " + ref.error.substr(0, 80),
                                 0.0, 0.0, 1.0, acfg.K_floor);
        for (double K : {0.005, 0.01, 0.05, 0.1, 0.2}) {
          const LadderPoint lp = eval_gamma(runner, 1.0, K);
          if (!lp.ok) throw std::runtime_error(lp.error);
          okp.push_back(squeeze_factor(lp.stats.var_p, ref.stats.var_p));
          oke.push_back(squeeze_factor(lp.E, ref.E));
        }
        const double r = energy_correlation(okp, oke).pearson;
        if (r < -0.9)
          detail += " Pearson(O_Kz P, O_Kz E) = " + fmt(r) + " ok;";
        else {
          pass = false;
          detail += " Pearson(O_Kz P, O_Kz E) = " + fmt(r) + " >= -0.9;";
        }
      } catch (const std::exception& e) {
        pass = false;
        detail += std::string(" Kz part blocked: ") + std::string(e.what()).substr(0, 90) + ";";
      }
    }
    report(9, "squeeze/energy factor correlations (Fig 9)", pass, detail, timer.seconds());
  }
}

void criterion_10(FigureRunner& runner) {
  Stopwatch timer;
  const RunConfig cfg = acceptance_config();
  bool pass = true;
  std::string detail;
  try {
    const auto path = high_symmetry_path(cfg.model.lattice, {{"G", "X", "M", "G"}, 8});
    auto var_x_along = [&](double T) {
      const MeanFieldSolution& sol = runner.solution(T, 0.01);
      ModelParams p = cfg.model;
      p.kBT = T;
      p.Kz = 0.01;
      std::vector<double> out;
      for (const auto& pp : path) {
        const BogoliubovPair bare = bare_bogoliubov(p, pp.q);
        const RenormalizedPoint pt = renormalize(p, sol.params, pp.q, bare);
        const CompositeTransform ct = composite_transform(bare, hybridize(pt));
        const QuadratureStats s = variance_xp(eigenstate_amplitudes(ct, 0, 0, cfg.eps_trunc));
        track_uncertainty(s);
        out.push_back(s.var_x);
      }
      return out;
    };
    const std::vector<double> low = var_x_along(0.2);
    const std::vector<double> high = var_x_along(1.8);
    double best = -1.0;
    size_t best_i = 0;
    for (size_t i = 0; i < low.size(); ++i) {
      const double diff = std::abs(high[i] - low[i]);
      if (diff > best) {
        best = diff;
        best_i = i;
      }
    }
    const double at_gamma = std::abs(high[0] - low[0]);
    pass = at_gamma >= best - 1e-12;  // Gamma attains the maximum (M ties by symmetry)
    detail = "max |dvar_x| = " + fmt(best) + " at path index " + std::to_string(best_i) +
             ", Gamma value " + fmt(at_gamma);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("blocked: ") + std::string(e.what()).substr(0, 110);
  }
  report(10, "zone-center dominance along the path (Fig 10)", pass, detail, timer.seconds());
}

void criterion_11(FigureRunner& runner) {
  Stopwatch timer;
  const RunConfig cfg = acceptance_config();
  bool pass = true;
  std::string detail;
  int cells_checked = 0;
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
    for (double T : kTLadder) {
      for (double K : kKLadder) {
        try {
          const QuadratureStats s = runner.gamma_stats(T, K, n, m);
          const QuadratureStats ref_t = runner.gamma_stats(cfg.T_floor, K, n, m);
          const QuadratureStats ref_k = runner.gamma_stats(T, cfg.K_floor, n, m);
          track_uncertainty(s);
          const double otx = squeeze_factor(s.var_x, ref_t.var_x);
          const double otp = squeeze_factor(s.var_p, ref_t.var_p);
          const double okx = squeeze_factor(s.var_x, ref_k.var_x);
          const double okp = squeeze_factor(s.var_p, ref_k.var_p);
          ++cells_checked;
          if (!(otx > 0.0 && okp > 0.0 && okx < 0.0 && otp < 0.0)) {
            pass = false;
            detail += " sign violation at (n,m)=(" + std::to_string(n) + "," +
                      std::to_string(m) + ") T=" + fmt(T) + " Kz=" + fmt(K) + ";";
          }
        } catch (const std::exception&) {
          pass = false;
          detail += " blocked cell (n,m)=(" + std::to_string(n) + "," + std::to_string(m) +
                    ") T=" + fmt(T) + " Kz=" + fmt(K) + ";";
        }
      }
    }
  }
  detail = std::to_string(cells_checked) + "/60 cells computable;" + detail;
  if (detail.size() > 240) detail = detail.substr(0, 240) + "...";
  report(11, "excited-state factor signs (Fig 11/12)", pass, detail, timer.seconds());
}

void criterion_12() {
  Stopwatch timer;
  bool pass = true;
  std::string detail;
  try {
    const fs::path base = fs::temp_directory_path() / "magsq_acceptance";
    fs::remove_all(base);
    auto run_all = [&](int workers, const std::string& sub) {
      RunConfig cfg = acceptance_config();
      cfg.workers = workers;
      cfg.out_dir = (base / sub).string();
      FigureRunner runner(cfg);
      runner.run({});
    };
    run_all(1, "w1");
    run_all(8, "w8");

    std::vector<fs::path> csvs;
    for (const auto& entry : fs::directory_iterator(base / "w1"))
      if (entry.path().extension() == ".csv") csvs.push_back(entry.path().filename());
    std::sort(csvs.begin(), csvs.end());
    size_t compared = 0;
    for (const auto& name : csvs) {
      std::ifstream a(base / "w1" / name, std::ios::binary);
      std::ifstream b(base / "w8" / name, std::ios::binary);
      if (!b.good()) {
        pass = false;
        detail += " missing in w8: " + name.string() + ";";
        continue;
      }
      std::ostringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      if (sa.str() != sb.str()) {
        pass = false;
        detail += " byte mismatch: " + name.string() + ";";
      }
      ++compared;
    }
    // the w8 run must not produce extra CSVs either
    size_t w8_count = 0;
    for (const auto& entry : fs::directory_iterator(base / "w8"))
      if (entry.path().extension() == ".csv") ++w8_count;
    if (w8_count != csvs.size()) {
      pass = false;
      detail += " CSV set differs between worker counts;";
    }
    if (compared == 0) {
      pass = false;
      detail += " no CSVs produced;";
    }
    if (pass) detail = std::to_string(compared) + " CSVs byte-identical across workers 1 and 8";

    // fold the figure-sweep states into the uncertainty tracking (criterion 4)
    std::ifstream heat(base / "w1" / "fig5.csv");
    if (heat.good()) {
      std::string line;
      std::getline(heat, line);
      while (std::getline(heat, line)) {
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
        if (cols.size() == 6) g_min_uncertainty = std::min(g_min_uncertainty, cols[2] * cols[4]);
      }
    }
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("error: ") + e.what();
  }
  report(12, "deterministic output across worker counts", pass, detail, timer.seconds());
}

}  // namespace

int main() {
  std::printf("magsq acceptance suite (defaults: S = 1, J = 1 meV, square lattice, 64x64 grid)\n");
  RunConfig cfg = acceptance_config();
  FigureRunner runner(cfg);

  criterion_1(runner);
  criterion_2();
  criterion_3();
  criteria_5_to_9(runner);
  criterion_10(runner);
  criterion_11(runner);
  criterion_12();

  // criterion 4 folds in every state computed above plus the figure sweeps
  {
    const bool pass = g_min_uncertainty >= 0.25 - 1e-9;
    report(4, "uncertainty bound", pass,
           "min var_x * var_p = " + fmt(g_min_uncertainty) + " (bound 0.25 - 1e-9)", 0.0);
  }

  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  if (g_failures > 0) {
    std::printf("failing criteria are blocked by the thermal collapse of the Hartree-Fock\n"
                "mean field at the default parameter scale; see README (stability edge) and\n"
                "the per-criterion diagnostics above\n");
  }
  return g_failures > 0 ? 1 : 0;
}
