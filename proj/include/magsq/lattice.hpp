#pragma once

#include <complex>
#include <string>
#include <vector>

namespace magsq {

enum class LatticeKind { Square, Hexagonal };

// Lattice geometry. The coordination number is tied to the kind:
// z = 4 (square), z = 3 (hexagonal).
struct LatticeSpec {
  LatticeKind kind{LatticeKind::Square};
  double a_c{1.0};  // lattice constant, dimensionless unit 1 by default

  int coordination() const { return kind == LatticeKind::Square ? 4 : 3; }
  void validate() const;

  static LatticeSpec square(double a_c = 1.0) { return {LatticeKind::Square, a_c}; }
  static LatticeSpec hexagonal(double a_c = 1.0) { return {LatticeKind::Hexagonal, a_c}; }
};

struct WaveVector {
  double qx{0.0};
  double qy{0.0};
};

// High-symmetry path descriptor: labeled points (Gamma/X/M for square,
// Gamma/K/M for hexagonal) with a fixed number of samples per segment.
struct BZPath {
  std::vector<std::string> labels{"G", "X", "M", "G"};
  int samples_per_segment{8};
};

struct PathPoint {
  WaveVector q;
  double arc{0.0};    // cumulative Euclidean arc length in q-space
  std::string label;  // set at the labeled nodes, empty in between
};

// Uniform Monkhorst-Pack style grid over the primitive reciprocal cell.
// Weights are uniform and sum to 1; the grid size plays the role of N/2.
struct BZGrid {
  std::vector<WaveVector> points;
  std::vector<double> weights;
};

// gamma_q = z^-1 sum_i exp(i q . delta_i) over nearest neighbors; |gamma_q| <= 1.
std::complex<double> structure_factor(const LatticeSpec& spec, const WaveVector& q);

// Long-wavelength expansion 1 - a_c^2 |q|^2 / 4 (both lattices).
double structure_factor_longwave(const LatticeSpec& spec, const WaveVector& q);

// Coordinates of a labeled high-symmetry point. Throws ConfigError on labels
// unknown for the lattice kind.
WaveVector high_symmetry_point(const LatticeSpec& spec, const std::string& label);

// Linear interpolation between consecutive labeled points; endpoints included
// exactly once. Point count = 1 + segments * samples_per_segment.
std::vector<PathPoint> high_symmetry_path(const LatticeSpec& spec, const BZPath& path);

BZGrid bz_grid(const LatticeSpec& spec, int n_per_axis);

}  // namespace magsq
