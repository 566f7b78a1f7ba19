#pragma once

// Monte Carlo audits: coverage of confidence families, validity of contours
// and of assertion plausibilities, and a Kolmogorov–Smirnov uniformity
// diagnostic.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "imconf/core.hpp"
#include "imconf/imcore.hpp"
#include "imconf/parallel.hpp"
#include "imconf/rng.hpp"

namespace imconf {

/// P_{X|theta}: draw produces one data set from a generator.
template <class Data>
struct SamplingModel {
  std::function<Data(const ParamPoint&, CounterRng&)> draw;
  InterestMap interest = [](const ParamPoint& t) { return t; };
  std::vector<ParamPoint> param_grid_hint;
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t reps = 0;
};

inline const std::vector<double> kDefaultAuditAlphas = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9};

/// Generator for replicate i of theta-cell `cell`.
inline CounterRng cell_stream(const MCConfig& mc, std::size_t cell, std::size_t i) {
  return CounterRng(mc.seed, mix64(mc.stream_id) + cell, i);
}

/// P_{X|theta}{C_alpha(X) contains phi(theta)}.
template <class Data>
Estimate coverage_probability(const SamplingModel<Data>& model, const ConfidenceFamily<Data>& family,
                              const ParamPoint& theta, AlphaLevel alpha, const MCConfig& mc,
                              Execution exec = Execution::parallel) {
  mc.validate();
  const ParamPoint phi = model.interest(theta);
  const std::size_t hits = count_index(mc.reps, exec, [&](std::size_t i) {
    CounterRng rng = cell_stream(mc, 0, i);
    return family.member(model.draw(theta, rng), alpha, phi);
  });
  const double p = static_cast<double>(hits) / static_cast<double>(mc.reps);
  return {p, binomial_se(p, mc.reps), mc.reps};
}

struct CoverageCell {
  ParamPoint theta;
  ParamPoint phi;
  Estimate coverage;
};

struct CoverageFunction {
  std::vector<CoverageCell> cells;
  /// Per distinct phi (in order of first appearance): the minimum coverage
  /// over the tested theta with that phi.
  std::vector<std::pair<ParamPoint, double>> infimum;
};

/// Grid estimate of phi -> inf over {theta : phi(theta) = phi} of the
/// coverage; constancy at 1 - alpha is left to the caller to judge.
template <class Data>
CoverageFunction coverage_function(const SamplingModel<Data>& model, const ConfidenceFamily<Data>& family,
                                   const std::vector<ParamPoint>& thetas, AlphaLevel alpha, const MCConfig& mc,
                                   Execution exec = Execution::parallel) {
  CoverageFunction out;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    CoverageCell c{thetas[k], model.interest(thetas[k]),
                   coverage_probability(model, family, thetas[k], alpha, mc.with_stream(mc.stream_id + k), exec)};
    bool found = false;
    for (auto& [phi, inf] : out.infimum) {
      if (phi == c.phi) {
        inf = std::min(inf, c.coverage.value);
        found = true;
      }
    }
    if (!found) out.infimum.emplace_back(c.phi, c.coverage.value);
    out.cells.push_back(std::move(c));
  }
  return out;
}

struct AuditRow {
  ParamPoint theta;
  double alpha = 0.0;
  double exceedance = 0.0;
  double se = 0.0;
  std::size_t reps = 0;
  bool flag = false;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  std::vector<ParamPoint> grid;
  std::vector<double> alphas;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  /// max over rows of exceedance - alpha, and the row attaining it.
  double worst_excess = 0.0;
  std::size_t worst_row = 0;
  std::size_t flagged = 0;

  bool valid() const { return flagged == 0; }
  std::string to_csv() const;
  std::string to_json() const;
};

/// Builds a report from per-cell plausibility samples. Exceedance at alpha
/// is the fraction of values <= alpha; flags mark exceedance above
/// alpha + 3 SE.
AuditReport make_audit_report(const std::vector<ParamPoint>& thetas, const std::vector<double>& alphas,
                              const std::vector<std::vector<double>>& values, const MCConfig& mc);

/// For each theta, draws X ~ P_{X|theta} and records pl_X({theta}); all
/// alpha thresholds share the same draws.
template <class Data>
AuditReport contour_validity_audit(const SamplingModel<Data>& model,
                                   const std::function<double(const Data&, const ParamPoint&)>& engine,
                                   const std::vector<ParamPoint>& thetas, const std::vector<double>& alphas,
                                   const MCConfig& mc, Execution exec = Execution::parallel) {
  mc.validate();
  std::vector<std::vector<double>> values;
  values.reserve(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    values.push_back(map_index<double>(mc.reps, exec, [&](std::size_t i) {
      CounterRng rng = cell_stream(mc, k, i);
      return engine(model.draw(thetas[k], rng), thetas[k]);
    }));
  }
  return make_audit_report(thetas, alphas, values, mc);
}

/// As contour_validity_audit, for pl_X(A) with theta ranging over a grid
/// inside A. Throws ParameterError if a grid point lies outside A.
template <class Data>
AuditReport assertion_validity_audit(const SamplingModel<Data>& model,
                                     const std::function<double(const Data&)>& pl_assertion, const Assertion& a,
                                     const std::vector<ParamPoint>& thetas, const std::vector<double>& alphas,
                                     const MCConfig& mc, Execution exec = Execution::parallel) {
  for (const auto& t : thetas)
    if (!a.contains(t)) throw ParameterError("assertion_validity_audit: grid point " + to_string(t) + " is outside A");
  return contour_validity_audit<Data>(
      model, [&](const Data& x, const ParamPoint&) { return pl_assertion(x); }, thetas, alphas, mc, exec);
}

/// sup_t |F_n(t) - t| for a sample on [0,1].
double ks_uniform(std::vector<double> samples);

}  // namespace imconf
