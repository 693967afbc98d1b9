#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magsq/config.hpp"

namespace magsq {

struct VerifyCheck {
  std::string name;
  double max_deviation{0.0};
  double tolerance{0.0};
  bool pass{false};
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

// Full oracle suite: symplectic identities over the BZ grid, ground-state
// annihilation, amplitude and variance equivalence against the truncated-Fock
// oracle, the uncertainty bound, the diagonal-Hamiltonian eigencheck, cutoff
// sensitivity, and the X/P cross-term.
VerifyReport run_verify(const RunConfig& cfg);

void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace magsq
