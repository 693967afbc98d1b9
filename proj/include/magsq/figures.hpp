#pragma once

#include <map>
#include <string>
#include <vector>

#include "magsq/config.hpp"
#include "magsq/quadrature.hpp"

namespace magsq {

// Outcome of one figure pipeline. A figure either completes (CSV + metadata
// written atomically) or aborts with a diagnostic recorded in its metadata;
// partial CSVs are never left behind.
struct FigureResult {
  std::string id;
  bool completed{false};
  std::vector<std::string> files;  // written CSV paths
  std::string diagnostic;          // set when aborted
};

const std::vector<std::string>& all_figure_ids();

// Orchestrates parameter sweeps and figure emission. Solves are cached by
// (kBT, Kz) and farmed out to a worker pool; assembly and file writes are
// single-threaded in fixed order, so output bytes are independent of the
// worker count.
class FigureRunner {
 public:
  explicit FigureRunner(RunConfig cfg);

  FigureResult run_figure(const std::string& figure_id);
  std::vector<FigureResult> run(const std::vector<std::string>& ids);

  // Gamma-point quadrature statistics for state (n, m) at (kBT, Kz); used by
  // the figure pipelines and the acceptance suite.
  QuadratureStats gamma_stats(double kBT, double Kz, int n, int m);
  double gamma_energy(double kBT, double Kz);

  const MeanFieldSolution& solution(double kBT, double Kz);
  void prefetch(const std::vector<std::pair<double, double>>& tk_pairs);

 private:
  RunConfig cfg_;
  BZGrid grid_;
  std::map<std::pair<double, double>, MeanFieldSolution> cache_;

  ModelParams model_at(double kBT, double Kz) const;
  void write_metadata(const std::string& id, const std::vector<std::string>& files,
                      const std::string& diagnostic,
                      const std::vector<SolveDiagnostics>& solves);

  FigureResult fig_dispersion(const std::string& id, SweepAxis axis);
  FigureResult fig_amplitudes();
  FigureResult fig_polar();
  FigureResult fig_heatmap();
  FigureResult fig_ox_curves();
  FigureResult fig_squeeze_factors();
  FigureResult fig_rates();
  FigureResult fig_correlation();
  FigureResult fig_path_profiles();
  FigureResult fig_excited_factors(const std::string& id,
                                   const std::vector<std::pair<int, int>>& states);
};

}  // namespace magsq
