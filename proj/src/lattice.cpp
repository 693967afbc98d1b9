// Lattice geometry: nearest-neighbor structure factors, high-symmetry paths,
// and Monkhorst-Pack style Brillouin-zone grids for the square (z = 4) and
// hexagonal (z = 3) lattices.

#include "magsq/lattice.hpp"

#include <cmath>
#include <numbers>

#include "magsq/errors.hpp"

namespace magsq {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x, y;
};

// Primitive reciprocal vectors of the underlying Bravais lattice.
// Hexagonal: Bravais vectors a1 = a(3/2, -sqrt3/2), a2 = a(3/2, sqrt3/2)
// from the nearest-neighbor set {a(1,0), a(-1/2, +-sqrt3/2)}.
void reciprocal_vectors(const LatticeSpec& spec, Vec2& b1, Vec2& b2) {
  const double a = spec.a_c;
  if (spec.kind == LatticeKind::Square) {
    b1 = {2.0 * kPi / a, 0.0};
    b2 = {0.0, 2.0 * kPi / a};
  } else {
    b1 = {2.0 * kPi / (3.0 * a), -2.0 * kPi / (std::sqrt(3.0) * a)};
    b2 = {2.0 * kPi / (3.0 * a), 2.0 * kPi / (std::sqrt(3.0) * a)};
  }
}

}  // namespace

void LatticeSpec::validate() const {
  if (!(a_c > 0.0)) throw ConfigError("lattice.a_c must be > 0");
}

std::complex<double> structure_factor(const LatticeSpec& spec, const WaveVector& q) {
  const double a = spec.a_c;
  if (spec.kind == LatticeKind::Square) {
    return {0.5 * (std::cos(a * q.qx) + std::cos(a * q.qy)), 0.0};
  }
  // e^{i a qx} (1 + 2 e^{-i 3 a qx / 2} cos(sqrt3 a qy / 2)) / 3
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> lead = std::exp(i * (a * q.qx));
  const std::complex<double> inner =
      1.0 + 2.0 * std::exp(-i * (1.5 * a * q.qx)) * std::cos(0.5 * std::sqrt(3.0) * a * q.qy);
  return lead * inner / 3.0;
}

double structure_factor_longwave(const LatticeSpec& spec, const WaveVector& q) {
  const double a = spec.a_c;
  return 1.0 - 0.25 * a * a * (q.qx * q.qx + q.qy * q.qy);
}

WaveVector high_symmetry_point(const LatticeSpec& spec, const std::string& label) {
  const double a = spec.a_c;
  const bool gamma = (label == "G" || label == "Gamma" || label == "Γ");
  if (spec.kind == LatticeKind::Square) {
    if (gamma) return {0.0, 0.0};
    if (label == "X") return {kPi / a, 0.0};
    if (label == "M") return {kPi / a, kPi / a};
  } else {
    if (gamma) return {0.0, 0.0};
    if (label == "K") return {2.0 * kPi / (3.0 * a), 2.0 * kPi / (3.0 * std::sqrt(3.0) * a)};
    if (label == "M") return {2.0 * kPi / (3.0 * a), 0.0};
  }
  throw ConfigError("unknown high-symmetry label '" + label + "' for this lattice kind");
}

std::vector<PathPoint> high_symmetry_path(const LatticeSpec& spec, const BZPath& path) {
  if (path.labels.size() < 2) throw ConfigError("path needs at least 2 labeled points");
  if (path.samples_per_segment < 1) throw ConfigError("path.samples_per_segment must be >= 1");

  std::vector<WaveVector> nodes;
  nodes.reserve(path.labels.size());
  for (const auto& label : path.labels) nodes.push_back(high_symmetry_point(spec, label));

  std::vector<PathPoint> out;
  out.reserve(1 + (nodes.size() - 1) * static_cast<size_t>(path.samples_per_segment));
  out.push_back({nodes[0], 0.0, path.labels[0]});
  double arc = 0.0;
  for (size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    const WaveVector& p0 = nodes[seg];
    const WaveVector& p1 = nodes[seg + 1];
    const double seg_len = std::hypot(p1.qx - p0.qx, p1.qy - p0.qy);
    for (int k = 1; k <= path.samples_per_segment; ++k) {
      const double t = static_cast<double>(k) / path.samples_per_segment;
      WaveVector q{p0.qx + t * (p1.qx - p0.qx), p0.qy + t * (p1.qy - p0.qy)};
      std::string label = (k == path.samples_per_segment) ? path.labels[seg + 1] : "";
      out.push_back({q, arc + t * seg_len, std::move(label)});
    }
    arc += seg_len;
  }
  return out;
}

BZGrid bz_grid(const LatticeSpec& spec, int n_per_axis) {
  if (n_per_axis < 1) throw ConfigError("bz_grid: n_per_axis must be >= 1");
  Vec2 b1, b2;
  reciprocal_vectors(spec, b1, b2);

  BZGrid grid;
  const int n = n_per_axis;
  grid.points.reserve(static_cast<size_t>(n) * n);
  const double w = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double fi = static_cast<double>(2 * i - n + 1) / (2.0 * n);
    for (int j = 0; j < n; ++j) {
      const double fj = static_cast<double>(2 * j - n + 1) / (2.0 * n);
      grid.points.push_back({fi * b1.x + fj * b2.x, fi * b1.y + fj * b2.y});
    }
  }
  grid.weights.assign(grid.points.size(), w);
  return grid;
}

}  // namespace magsq
