#pragma once

// Ready-made audits over the shipped models, shared by the CLI and tests.

#include <string>
#include <vector>

#include "imconf/validity.hpp"

namespace imconf::experiments {

/// Models accepted by the functions below: normal, binomial, uniform, bf,
/// dkw (fused_validity_audit) and additionally fieller (coverage).
const std::vector<std::string>& model_names();

struct AuditSetup {
  std::string model;
  /// Sample size; 0 picks the model default (binomial 25, uniform 10,
  /// dkw 100). Ignored by normal and bf.
  int n = 0;
  /// Empty picks the model's default grid.
  std::vector<ParamPoint> thetas;
  std::vector<double> alphas = kDefaultAuditAlphas;
  MCConfig mc{10000, 0, 0};
  /// Draws for the Monte Carlo null tables of bf and dkw.
  std::size_t table_reps = 100000;
};

int default_n(const std::string& model);
std::vector<ParamPoint> default_thetas(const std::string& model);

/// Audit of the fused contour evaluated at the true theta.
AuditReport fused_validity_audit(const AuditSetup& setup, Execution exec = Execution::parallel);

/// Coverage of the model's confidence family at theta.
Estimate coverage(const std::string& model, int n, const ParamPoint& theta, double alpha, const MCConfig& mc,
                  Execution exec = Execution::parallel);

}  // namespace imconf::experiments
