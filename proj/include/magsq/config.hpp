#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magsq/meanfield.hpp"

namespace magsq {

// Linear sweep grid (inclusive endpoints). steps == 1 degenerates to {start}.
struct SweepRange {
  double start{0.0};
  double stop{0.0};
  int steps{1};

  std::vector<double> values() const;
};

struct RunConfig {
  ModelParams model{};          // S, J, Kz, kBT defaults + lattice
  int grid_n{64};               // BZ grid per axis
  BZPath path{{"G", "X", "M", "G"}, 8};
  SweepRange sweep_kBT{0.1, 0.8, 5};
  SweepRange sweep_Kz{0.01, 0.2, 5};
  std::vector<std::pair<int, int>> states{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  double eps_trunc{1e-12};
  SolverOptions solver{};
  double T_floor{1e-3};         // realization of the T -> 0 reference limit
  double K_floor{1e-4};         // realization of the K_z -> 0 reference limit
  int oracle_cutoff{60};        // verify subcommand Fock cutoff
  std::string out_dir{"out"};
  std::vector<std::string> figures;  // empty selects all
  int workers{0};               // 0 = hardware concurrency
  long long seed{0};            // accepted, unused (no stochastic components)

  void validate() const;
};

// Strict JSON parse: unknown keys rejected, semantic violations name the key
// path, syntax errors carry line information. Empty text yields all defaults.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// Config echo for output metadata.
std::string config_to_json(const RunConfig& cfg);

}  // namespace magsq
