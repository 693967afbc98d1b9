#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace magsq {

// Configuration / input validation failures. Carries the offending key path
// when raised by the config parser.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bogoliubov coefficients diverge (eps_q -> 0, e.g. the Goldstone point at
// K_z = 0), or a transform is requested in a singular limit.
class DegeneratePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Renormalized mode softened past zero: (eps + eps_tilde)^2 < |g|^2.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(std::string msg, double qx, double qy, double kBT, double Kz)
      : std::runtime_error(std::move(msg)), qx(qx), qy(qy), kBT(kBT), Kz(Kz) {}
  double qx, qy, kBT, Kz;
};

// Self-consistent loop exhausted max_iter. Carries the residual trace.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, std::vector<double> history)
      : std::runtime_error(std::move(msg)), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

// Fock-space cutoff too small for the requested state (norm loss past tolerance).
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |nu| >= |w| in a composite transform; cannot occur for valid inputs, guards
// numeric drift.
class InvalidTransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pearson correlation undefined (zero variance in a column).
class UndefinedCorrelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace magsq
