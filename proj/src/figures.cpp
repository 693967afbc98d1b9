// Figure pipelines: sweep orchestration, worker-pool solves, and CSV + JSON
// metadata emission. Assembly and file writes run single-threaded in fixed
// order, so output bytes do not depend on the worker count. A figure either
// completes or aborts with a diagnostic in its metadata; no partial CSVs.

#include "magsq/figures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "magsq/csv.hpp"
#include "magsq/errors.hpp"
#include "magsq/parallel.hpp"

namespace magsq {

namespace {

constexpr const char* kVersion = "0.1.0";

using TK = std::pair<double, double>;  // (kBT, Kz)

}  // namespace

const std::vector<std::string>& all_figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2", "fig3",  "fig4",  "fig5",  "fig6",
                                               "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"};
  return ids;
}

FigureRunner::FigureRunner(RunConfig cfg)
    : cfg_(std::move(cfg)), grid_(bz_grid(cfg_.model.lattice, cfg_.grid_n)) {
  cfg_.validate();
}

ModelParams FigureRunner::model_at(double kBT, double Kz) const {
  ModelParams p = cfg_.model;
  p.kBT = kBT;
  p.Kz = Kz;
  return p;
}

const MeanFieldSolution& FigureRunner::solution(double kBT, double Kz) {
  const TK key{kBT, Kz};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, solve_self_consistent(model_at(kBT, Kz), grid_, cfg_.solver)).first;
  }
  return it->second;
}

void FigureRunner::prefetch(const std::vector<TK>& tk_pairs) {
  std::vector<TK> missing;
  for (const TK& key : tk_pairs)
    if (!cache_.count(key) &&
        std::find(missing.begin(), missing.end(), key) == missing.end())
      missing.push_back(key);
  if (missing.empty()) return;
  std::function<MeanFieldSolution(int)> task = [&](int i) {
    return solve_self_consistent(model_at(missing[static_cast<size_t>(i)].first,
                                          missing[static_cast<size_t>(i)].second),
                                 grid_, cfg_.solver);
  };
  auto solved = parallel_map<MeanFieldSolution>(cfg_.workers, static_cast<int>(missing.size()),
                                                task);
  for (size_t i = 0; i < missing.size(); ++i) cache_.emplace(missing[i], std::move(solved[i]));
}

QuadratureStats FigureRunner::gamma_stats(double kBT, double Kz, int n, int m) {
  const ModelParams p = model_at(kBT, Kz);
  const MeanFieldSolution& sol = solution(kBT, Kz);
  const WaveVector gamma_pt{0.0, 0.0};
  const BogoliubovPair bare = bare_bogoliubov(p, gamma_pt);
  const RenormalizedPoint pt = renormalize(p, sol.params, gamma_pt, bare);
  const CompositeTransform ct = composite_transform(bare, hybridize(pt));
  const StateAmplitudes amps = eigenstate_amplitudes(ct, n, m, cfg_.eps_trunc);
  QuadratureStats stats = variance_xp(amps);
  stats.q = gamma_pt;
  return stats;
}

double FigureRunner::gamma_energy(double kBT, double Kz) {
  const ModelParams p = model_at(kBT, Kz);
  const MeanFieldSolution& sol = solution(kBT, Kz);
  const WaveVector gamma_pt{0.0, 0.0};
  return renormalize(p, sol.params, gamma_pt, bare_bogoliubov(p, gamma_pt)).E;
}

void FigureRunner::write_metadata(const std::string& id, const std::vector<std::string>& files,
                                  const std::string& diagnostic,
                                  const std::vector<SolveDiagnostics>& solves) {
  nlohmann::json meta;
  meta["figure"] = id;
  meta["tool"] = std::string("magsq ") + kVersion;
  meta["status"] = diagnostic.empty() ? "completed" : "aborted";
  if (!diagnostic.empty()) meta["diagnostic"] = diagnostic;
  meta["files"] = files;
  meta["config"] = nlohmann::json::parse(config_to_json(cfg_));
  meta["grid_points"] = grid_.points.size();
  meta["workers"] = cfg_.workers;
  meta["seed"] = cfg_.seed;
  nlohmann::json diag = nlohmann::json::array();
  for (const auto& s : solves)
    diag.push_back({{"swept", s.swept}, {"iterations", s.iterations}, {"residual", s.residual}});
  meta["solves"] = diag;
  write_file_atomic(cfg_.out_dir + "/" + id + ".meta.json", meta.dump(2) + "\n");
}

FigureResult FigureRunner::run_figure(const std::string& id) {
  auto dispatch = [&]() -> FigureResult {
    if (id == "fig1") return fig_dispersion(id, SweepAxis::Temperature);
    if (id == "fig2") return fig_dispersion(id, SweepAxis::Anisotropy);
    if (id == "fig3") return fig_amplitudes();
    if (id == "fig4") return fig_polar();
    if (id == "fig5") return fig_heatmap();
    if (id == "fig6") return fig_ox_curves();
    if (id == "fig7") return fig_squeeze_factors();
    if (id == "fig8") return fig_rates();
    if (id == "fig9") return fig_correlation();
    if (id == "fig10") return fig_path_profiles();
    if (id == "fig11") return fig_excited_factors(id, {{1, 0}, {0, 1}});
    if (id == "fig12") return fig_excited_factors(id, {{1, 1}});
    throw ConfigError("unknown figure id '" + id + "'");
  };
  try {
    return dispatch();
  } catch (const InstabilityError& e) {
    write_metadata(id, {}, e.what(), {});
    return {id, false, {}, e.what()};
  } catch (const ConvergenceError& e) {
    write_metadata(id, {}, e.what(), {});
    return {id, false, {}, e.what()};
  } catch (const DegeneratePointError& e) {
    write_metadata(id, {}, e.what(), {});
    return {id, false, {}, e.what()};
  }
}

std::vector<FigureResult> FigureRunner::run(const std::vector<std::string>& ids) {
  const std::vector<std::string>& selected = ids.empty() ? all_figure_ids() : ids;
  std::vector<FigureResult> out;
  out.reserve(selected.size());
  for (const auto& id : selected) out.push_back(run_figure(id));
  return out;
}

FigureResult FigureRunner::fig_dispersion(const std::string& id, SweepAxis axis) {
  const auto values =
      axis == SweepAxis::Temperature ? cfg_.sweep_kBT.values() : cfg_.sweep_Kz.values();
  const auto sweep =
      dispersion_sweep(cfg_.model, axis, values, cfg_.path, cfg_.grid_n, cfg_.solver);
  const char* swept_col = axis == SweepAxis::Temperature ? "kBT_meV" : "Kz_meV";
  CsvTable table({"path_s", "qx", "qy", swept_col, "E_meV"});
  for (const auto& row : sweep.rows)
    table.add_row({row.arc, row.q.qx, row.q.qy, row.swept, row.E});
  const std::string path = cfg_.out_dir + "/" + id + ".csv";
  write_file_atomic(path, table.serialize());
  write_metadata(id, {path}, "", sweep.solves);
  return {id, true, {path}, ""};
}

FigureResult FigureRunner::fig_amplitudes() {
  const auto temps = cfg_.sweep_kBT.values();
  std::vector<TK> pairs;
  for (double T : temps) pairs.push_back({T, cfg_.model.Kz});
  prefetch(pairs);

  CsvTable table({"kBT_meV", "n", "m", "l", "re_p", "im_p", "abs_p2"});
  std::vector<SolveDiagnostics> diags;
  for (double T : temps) {
    const ModelParams p = model_at(T, cfg_.model.Kz);
    const MeanFieldSolution& sol = solution(T, cfg_.model.Kz);
    diags.push_back({T, sol.iterations, sol.residual});
    const WaveVector gamma_pt{0.0, 0.0};
    const BogoliubovPair bare = bare_bogoliubov(p, gamma_pt);
    const RenormalizedPoint pt = renormalize(p, sol.params, gamma_pt, bare);
    const CompositeTransform ct = composite_transform(bare, hybridize(pt));
    for (const auto& [n, m] : cfg_.states) {
      const StateAmplitudes amps = eigenstate_amplitudes(ct, n, m, cfg_.eps_trunc);
      for (int l = 0; l <= amps.L; ++l) {
        const auto& c = amps.p[static_cast<size_t>(l)];
        table.add_row({T, static_cast<long long>(n), static_cast<long long>(m),
                       static_cast<long long>(l), c.real(), c.imag(), std::norm(c)});
      }
    }
  }
  const std::string path = cfg_.out_dir + "/fig3.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig3", {path}, "", diags);
  return {"fig3", true, {path}, ""};
}

FigureResult FigureRunner::fig_polar() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double T : temps) pairs.push_back({T, cfg_.model.Kz});
  for (double K : kzs) pairs.push_back({cfg_.model.kBT, K});
  prefetch(pairs);

  constexpr int kNuSamples = 49;
  CsvTable table({"axis", "kBT_meV", "Kz_meV", "nu", "var_q", "var_err"});
  auto scan = [&](const char* axis, double T, double K) {
    const QuadratureStats stats = gamma_stats(T, K, 0, 0);
    for (int i = 0; i < kNuSamples; ++i) {
      const double nu = std::numbers::pi * i / (kNuSamples - 1);
      const double err = std::cos(nu) * std::cos(nu) * stats.err_x +
                         std::sin(nu) * std::sin(nu) * stats.err_p;
      table.add_row({std::string(axis), T, K, nu, variance_polar(stats, nu), err});
    }
  };
  for (double K : kzs) scan("Kz", cfg_.model.kBT, K);
  for (double T : temps) scan("T", T, cfg_.model.Kz);
  const std::string path = cfg_.out_dir + "/fig4.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig4", {path}, "", {});
  return {"fig4", true, {path}, ""};
}

FigureResult FigureRunner::fig_heatmap() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double T : temps)
    for (double K : kzs) pairs.push_back({T, K});
  prefetch(pairs);

  CsvTable table({"kBT_meV", "Kz_meV", "var_x", "var_x_err", "var_p", "var_p_err"});
  for (double T : temps)
    for (double K : kzs) {
      const QuadratureStats s = gamma_stats(T, K, 0, 0);
      table.add_row({T, K, s.var_x, s.err_x, s.var_p, s.err_p});
    }
  const std::string path = cfg_.out_dir + "/fig5.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig5", {path}, "", {});
  return {"fig5", true, {path}, ""};
}

FigureResult FigureRunner::fig_ox_curves() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double K : kzs)
    for (double T : temps) pairs.push_back({T, K});
  prefetch(pairs);

  CsvTable table({"Kz_meV", "kBT_meV", "ox_db"});
  for (double K : kzs)
    for (double T : temps) {
      const QuadratureStats s = gamma_stats(T, K, 0, 0);
      table.add_row({K, T, squeeze_factor(s.var_x, 0.5)});
    }
  const std::string path = cfg_.out_dir + "/fig6.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig6", {path}, "", {});
  return {"fig6", true, {path}, ""};
}

FigureResult FigureRunner::fig_squeeze_factors() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double K : kzs) {
    pairs.push_back({cfg_.T_floor, K});
    for (double T : temps) pairs.push_back({T, K});
  }
  for (double T : temps) pairs.push_back({T, cfg_.K_floor});
  prefetch(pairs);

  CsvTable table({"factor_kind", "kBT_meV", "Kz_meV", "value_db"});
  // O_T X against the T -> 0 reference, one curve per anisotropy
  for (double K : kzs) {
    const double ref = gamma_stats(cfg_.T_floor, K, 0, 0).var_x;
    for (double T : temps) {
      const QuadratureStats s = gamma_stats(T, K, 0, 0);
      table.add_row({std::string("O_T_X"), T, K, squeeze_factor(s.var_x, ref)});
    }
  }
  // O_Kz P against the K_z -> 0 reference, one curve per temperature
  for (double T : temps) {
    const double ref = gamma_stats(T, cfg_.K_floor, 0, 0).var_p;
    for (double K : kzs) {
      const QuadratureStats s = gamma_stats(T, K, 0, 0);
      table.add_row({std::string("O_Kz_P"), T, K, squeeze_factor(s.var_p, ref)});
    }
  }
  const std::string path = cfg_.out_dir + "/fig7.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig7", {path}, "", {});
  return {"fig7", true, {path}, ""};
}

FigureResult FigureRunner::fig_rates() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double T : temps) pairs.push_back({T, cfg_.model.Kz});
  for (double K : kzs) pairs.push_back({cfg_.model.kBT, K});
  prefetch(pairs);

  CsvTable table({"axis", "kBT_meV", "Kz_meV", "variance", "rate"});
  {
    std::vector<double> vx;
    for (double T : temps) vx.push_back(gamma_stats(T, cfg_.model.Kz, 0, 0).var_x);
    const auto rate = squeezing_rate(temps, vx);
    for (size_t i = 0; i < temps.size(); ++i)
      table.add_row({std::string("T"), temps[i], cfg_.model.Kz, vx[i], rate[i]});
  }
  {
    std::vector<double> vp;
    for (double K : kzs) vp.push_back(gamma_stats(cfg_.model.kBT, K, 0, 0).var_p);
    const auto rate = squeezing_rate(kzs, vp);
    for (size_t i = 0; i < kzs.size(); ++i)
      table.add_row({std::string("Kz"), cfg_.model.kBT, kzs[i], vp[i], rate[i]});
  }
  const std::string path = cfg_.out_dir + "/fig8.csv";
  write_file_atomic(path, table.serialize());
  write_metadata("fig8", {path}, "", {});
  return {"fig8", true, {path}, ""};
}

FigureResult FigureRunner::fig_correlation() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  pairs.push_back({cfg_.T_floor, cfg_.model.Kz});
  for (double T : temps) pairs.push_back({T, cfg_.model.Kz});
  pairs.push_back({cfg_.model.kBT, cfg_.K_floor});
  for (double K : kzs) pairs.push_back({cfg_.model.kBT, K});
  prefetch(pairs);

  CsvTable table({"axis", "kBT_meV", "Kz_meV", "o_squeeze_db", "o_energy_db"});
  std::vector<double> otx, ote;
  {
    const double ref_vx = gamma_stats(cfg_.T_floor, cfg_.model.Kz, 0, 0).var_x;
    const double ref_E = gamma_energy(cfg_.T_floor, cfg_.model.Kz);
    for (double T : temps) {
      otx.push_back(squeeze_factor(gamma_stats(T, cfg_.model.Kz, 0, 0).var_x, ref_vx));
      ote.push_back(squeeze_factor(gamma_energy(T, cfg_.model.Kz), ref_E));
      table.add_row({std::string("T"), T, cfg_.model.Kz, otx.back(), ote.back()});
    }
  }
  std::vector<double> okp, oke;
  {
    const double ref_vp = gamma_stats(cfg_.model.kBT, cfg_.K_floor, 0, 0).var_p;
    const double ref_E = gamma_energy(cfg_.model.kBT, cfg_.K_floor);
    for (double K : kzs) {
      okp.push_back(squeeze_factor(gamma_stats(cfg_.model.kBT, K, 0, 0).var_p, ref_vp));
      oke.push_back(squeeze_factor(gamma_energy(cfg_.model.kBT, K), ref_E));
      table.add_row({std::string("Kz"), cfg_.model.kBT, K, okp.back(), oke.back()});
    }
  }
  const CorrelationResult corr_t = energy_correlation(otx, ote);
  const CorrelationResult corr_k = energy_correlation(okp, oke);

  const std::string path = cfg_.out_dir + "/fig9.csv";
  write_file_atomic(path, table.serialize());
  nlohmann::json meta;
  meta["figure"] = "fig9";
  meta["tool"] = std::string("magsq ") + kVersion;
  meta["status"] = "completed";
  meta["files"] = {path};
  meta["config"] = nlohmann::json::parse(config_to_json(cfg_));
  meta["grid_points"] = grid_.points.size();
  meta["workers"] = cfg_.workers;
  meta["seed"] = cfg_.seed;
  meta["pearson_T"] = corr_t.pearson;
  meta["pearson_Kz"] = corr_k.pearson;
  write_file_atomic(cfg_.out_dir + "/fig9.meta.json", meta.dump(2) + "\n");
  return {"fig9", true, {path}, ""};
}

FigureResult FigureRunner::fig_path_profiles() {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double T : temps) pairs.push_back({T, cfg_.model.Kz});
  for (double K : kzs) pairs.push_back({cfg_.model.kBT, K});
  prefetch(pairs);

  const auto path_points = high_symmetry_path(cfg_.model.lattice, cfg_.path);
  auto stats_at = [&](double T, double K, const WaveVector& q) {
    const ModelParams p = model_at(T, K);
    const BogoliubovPair bare = bare_bogoliubov(p, q);
    const RenormalizedPoint pt = renormalize(p, solution(T, K).params, q, bare);
    const CompositeTransform ct = composite_transform(bare, hybridize(pt));
    return variance_xp(eigenstate_amplitudes(ct, 0, 0, cfg_.eps_trunc));
  };

  CsvTable table({"axis", "path_s", "qx", "qy", "axis_value", "var_x", "var_p"});
  // profiles: var_x, var_p along the path per ladder value
  std::vector<std::vector<double>> vx_t(path_points.size()), vp_k(path_points.size());
  for (double T : temps)
    for (size_t i = 0; i < path_points.size(); ++i) {
      const QuadratureStats s = stats_at(T, cfg_.model.Kz, path_points[i].q);
      vx_t[i].push_back(s.var_x);
      table.add_row({std::string("T"), path_points[i].arc, path_points[i].q.qx,
                     path_points[i].q.qy, T, s.var_x, s.var_p});
    }
  for (double K : kzs)
    for (size_t i = 0; i < path_points.size(); ++i) {
      const QuadratureStats s = stats_at(cfg_.model.kBT, K, path_points[i].q);
      vp_k[i].push_back(s.var_p);
      table.add_row({std::string("Kz"), path_points[i].arc, path_points[i].q.qx,
                     path_points[i].q.qy, K, s.var_x, s.var_p});
    }

  // rate of change per path point, evaluated at the ladder midpoint
  CsvTable rates({"axis", "path_s", "qx", "qy", "mid_axis_value", "rate"});
  const size_t mid_t = temps.size() / 2;
  const size_t mid_k = kzs.size() / 2;
  for (size_t i = 0; i < path_points.size(); ++i) {
    const auto rt = squeezing_rate(temps, vx_t[i]);
    rates.add_row({std::string("T"), path_points[i].arc, path_points[i].q.qx,
                   path_points[i].q.qy, temps[mid_t], rt[mid_t]});
  }
  for (size_t i = 0; i < path_points.size(); ++i) {
    const auto rk = squeezing_rate(kzs, vp_k[i]);
    rates.add_row({std::string("Kz"), path_points[i].arc, path_points[i].q.qx,
                   path_points[i].q.qy, kzs[mid_k], rk[mid_k]});
  }

  const std::string path1 = cfg_.out_dir + "/fig10.csv";
  const std::string path2 = cfg_.out_dir + "/fig10_rates.csv";
  write_file_atomic(path1, table.serialize());
  write_file_atomic(path2, rates.serialize());
  write_metadata("fig10", {path1, path2}, "", {});
  return {"fig10", true, {path1, path2}, ""};
}

FigureResult FigureRunner::fig_excited_factors(const std::string& id,
                                               const std::vector<std::pair<int, int>>& states) {
  const auto temps = cfg_.sweep_kBT.values();
  const auto kzs = cfg_.sweep_Kz.values();
  std::vector<TK> pairs;
  for (double T : temps)
    for (double K : kzs) pairs.push_back({T, K});
  for (double K : kzs) pairs.push_back({cfg_.T_floor, K});
  for (double T : temps) pairs.push_back({T, cfg_.K_floor});
  prefetch(pairs);

  CsvTable table({"factor_kind", "n", "m", "kBT_meV", "Kz_meV", "value_db"});
  for (const auto& [n, m] : states) {
    for (double T : temps)
      for (double K : kzs) {
        const QuadratureStats s = gamma_stats(T, K, n, m);
        const QuadratureStats ref_t = gamma_stats(cfg_.T_floor, K, n, m);
        const QuadratureStats ref_k = gamma_stats(T, cfg_.K_floor, n, m);
        const long long nn = n, mm = m;
        table.add_row({std::string("O_T_X"), nn, mm, T, K,
                       squeeze_factor(s.var_x, ref_t.var_x)});
        table.add_row({std::string("O_T_P"), nn, mm, T, K,
                       squeeze_factor(s.var_p, ref_t.var_p)});
        table.add_row({std::string("O_Kz_X"), nn, mm, T, K,
                       squeeze_factor(s.var_x, ref_k.var_x)});
        table.add_row({std::string("O_Kz_P"), nn, mm, T, K,
                       squeeze_factor(s.var_p, ref_k.var_p)});
      }
  }
  const std::string path = cfg_.out_dir + "/" + id + ".csv";
  write_file_atomic(path, table.serialize());
  write_metadata(id, {path}, "", {});
  return {id, true, {path}, ""};
}

}  // namespace magsq
