// verify.hpp - closed forms checked against dense diagonalization

#pragma once

#include <string>
#include <vector>

#include "optomag/model.hpp"

namespace optomag {

struct VerifyCheck {
  std::string name;
  double max_deviation;
  double tolerance;
  bool pass;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_pass() const;
  double max_deviation() const;
};

/// Runs every closed-form/numeric comparison around `base` (its g_a, ω_c and
/// n_max are kept; couplings, detunings and μ are varied over fixed grids).
VerifyReport run_verify(const ModelParams& base);

}  // namespace optomag
