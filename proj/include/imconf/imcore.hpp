#pragma once

// Inferential-model engine: associations, theta-indexed random sets, the
// alpha-index / support-mass construction and fusion of theta-specific
// plausibilities into a single contour.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <type_traits>
#include <vector>

#include "imconf/core.hpp"
#include "imconf/errors.hpp"
#include "imconf/parallel.hpp"
#include "imconf/rng.hpp"

namespace imconf {

inline constexpr double kAlphaFloor = 1e-9;
inline constexpr double kAlphaCeil = 1.0 - 1e-9;

template <class Param>
using FocalSet =
    std::conditional_t<std::is_same_v<Param, ParamPoint>, Region, std::function<bool(const Param&)>>;

/// X = a(theta, U). fiber(x, theta) returns representatives of
/// {u : x = a(theta, u)}; an empty vector means the fiber is empty. The
/// models used here have fibers on which support membership is constant, so
/// representatives suffice.
template <class Data, class Aux, class Param = ParamPoint>
struct Association {
  std::function<Data(const Param&, const Aux&)> forward;
  std::function<std::vector<Aux>(const Data&, const Param&)> fiber;
  std::function<FocalSet<Param>(const Data&, const Aux&)> focal;
  std::function<Aux(CounterRng&)> aux_sampler;
};

/// Supports S_alpha(theta), closed (non-strict inequalities). exact_mass,
/// when set, returns P_U(S_alpha(theta)) without sampling.
template <class Aux, class Param = ParamPoint>
struct RandomSetFamily {
  std::function<bool(const Aux&, AlphaLevel, const Param&)> support_member;
  std::function<double(AlphaLevel, const Param&)> exact_mass;
};

struct MassEstimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t reps = 0;
  bool exact = false;
};

struct ThetaPlaus {
  double value = 0.0;
  double index = 0.0;
  double se = 0.0;
};

inline double binomial_se(double p, std::size_t reps) {
  return reps == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(reps));
}

template <class Data, class Aux, class Param>
FocalSet<Param> focal_set(const Association<Data, Aux, Param>& assoc, const Data& x, const Aux& u) {
  return assoc.focal(x, u);
}

/// Draws u_1..u_reps from P_U; draw i always comes from substream i, so the
/// same draws are shared by every alpha and theta evaluated with mc.
template <class Data, class Aux, class Param>
std::vector<Aux> draw_aux(const Association<Data, Aux, Param>& assoc, const MCConfig& mc,
                          Execution exec = Execution::parallel) {
  mc.validate();
  return map_index<Aux>(mc.reps, exec, [&](std::size_t i) {
    CounterRng rng = substream(mc, i);
    return assoc.aux_sampler(rng);
  });
}

/// P_U(S_alpha(theta)) over pre-drawn auxiliary values.
template <class Aux, class Param>
MassEstimate support_mass_on(const RandomSetFamily<Aux, Param>& rs, AlphaLevel alpha, const Param& theta,
                             const std::vector<Aux>& draws, Execution exec = Execution::parallel) {
  if (draws.empty()) throw ParameterError("support_mass: no auxiliary draws");
  const std::size_t hits =
      count_index(draws.size(), exec, [&](std::size_t i) { return rs.support_member(draws[i], alpha, theta); });
  const double p = static_cast<double>(hits) / static_cast<double>(draws.size());
  return {p, binomial_se(p, draws.size()), draws.size(), false};
}

/// Exact mass when the family provides it, otherwise Monte Carlo with mc.
template <class Data, class Aux, class Param>
MassEstimate support_mass(const Association<Data, Aux, Param>& assoc, const RandomSetFamily<Aux, Param>& rs,
                          AlphaLevel alpha, const Param& theta, const MCConfig& mc,
                          Execution exec = Execution::parallel) {
  if (rs.exact_mass) return {rs.exact_mass(alpha, theta), 0.0, 0, true};
  return support_mass_on(rs, alpha, theta, draw_aux(assoc, mc, exec), exec);
}

/// sup{alpha : S_alpha(theta) meets the fiber of x at theta}, by bisection
/// on [1e-9, 1 - 1e-9]. Values at or beyond the bracket ends are reported as
/// 0 and 1.
template <class Data, class Aux, class Param>
double alpha_index(const Association<Data, Aux, Param>& assoc, const RandomSetFamily<Aux, Param>& rs,
                   const Data& x, const Param& theta, double tol = kAlphaTolerance) {
  const std::vector<Aux> fiber = assoc.fiber(x, theta);
  if (fiber.empty()) throw ModelInconsistency("alpha_index: data cannot arise from this parameter (empty fiber)");
  auto meets = [&](double a) {
    const AlphaLevel level(a);
    return std::any_of(fiber.begin(), fiber.end(), [&](const Aux& u) { return rs.support_member(u, level, theta); });
  };
  double lo = kAlphaFloor, hi = kAlphaCeil;
  if (meets(hi)) return 1.0;
  if (!meets(lo)) return 0.0;
  for (int it = 0; it < kBisectionCap && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (meets(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// pl_x({theta} | theta) = 1 - P_U(S_{alpha(x,theta)}(theta)). An empty
/// fiber gives 0. `draws` supplies common random numbers when the family
/// has no exact mass.
template <class Data, class Aux, class Param>
ThetaPlaus theta_specific_plaus_on(const Association<Data, Aux, Param>& assoc,
                                   const RandomSetFamily<Aux, Param>& rs, const Data& x, const Param& theta,
                                   const std::vector<Aux>& draws, Execution exec = Execution::serial,
                                   double tol = kAlphaTolerance) {
  if (assoc.fiber(x, theta).empty()) return {0.0, 0.0, 0.0};
  const double index = alpha_index(assoc, rs, x, theta, tol);
  if (index <= 0.0) return {0.0, 0.0, 0.0};
  const AlphaLevel level(std::min(index, kAlphaCeil));
  MassEstimate m;
  if (rs.exact_mass)
    m = {rs.exact_mass(level, theta), 0.0, 0, true};
  else
    m = support_mass_on(rs, level, theta, draws, exec);
  return {std::clamp(1.0 - m.value, 0.0, 1.0), index, m.se};
}

template <class Data, class Aux, class Param>
ThetaPlaus theta_specific_plaus(const Association<Data, Aux, Param>& assoc, const RandomSetFamily<Aux, Param>& rs,
                                const Data& x, const Param& theta, const MCConfig& mc,
                                Execution exec = Execution::parallel) {
  if (rs.exact_mass) return theta_specific_plaus_on(assoc, rs, x, theta, std::vector<Aux>{}, exec);
  return theta_specific_plaus_on(assoc, rs, x, theta, draw_aux(assoc, mc, exec), exec);
}

/// Wraps a fused point function as a contour. The witness is the best of
/// the grid points and `hints`; one-dimensional grids are refined by
/// golden-section search on the cells around the best grid point. `search`,
/// when given, replaces pl during the golden-section refinement (a finer
/// evaluation of the same function, so that bisection steps do not leave
/// flat spots near the peak).
PlausibilityContour<> fuse(std::function<double(const ParamPoint&)> pl, const GridSpec& grid,
                           const std::vector<ParamPoint>& hints = {}, ContourShape shape = ContourShape::general,
                           Execution exec = Execution::parallel,
                           std::function<double(const ParamPoint&)> search = nullptr);

/// theta -> pl_x({theta} | theta) with common random numbers drawn once from
/// mc. Throws NonConsonant when the supremum found on grid and hints is
/// below 1.
template <class Data, class Aux>
PlausibilityContour<> fused_contour(const Association<Data, Aux, ParamPoint>& assoc,
                                    const RandomSetFamily<Aux, ParamPoint>& rs, const Data& x, const MCConfig& mc,
                                    const GridSpec& grid, const std::vector<ParamPoint>& hints = {},
                                    Execution exec = Execution::parallel) {
  std::vector<Aux> draws;
  if (!rs.exact_mass) draws = draw_aux(assoc, mc, exec);
  auto shared = std::make_shared<const std::vector<Aux>>(std::move(draws));
  auto pl = [assoc, rs, x, shared](const ParamPoint& theta) {
    return theta_specific_plaus_on(assoc, rs, x, theta, *shared, Execution::serial).value;
  };
  auto fine = [assoc, rs, x, shared](const ParamPoint& theta) {
    return theta_specific_plaus_on(assoc, rs, x, theta, *shared, Execution::serial, 1e-13).value;
  };
  return fuse(pl, grid, hints, ContourShape::general, exec, fine);
}

struct NestingViolation {
  std::size_t draw = 0;
  double alpha_hi = 0.0;
  double alpha_lo = 0.0;
};

struct NestingReport {
  std::size_t draws_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<NestingViolation> violations;
  bool nested() const { return violations.empty(); }
};

/// For each sampled u, membership in S_alpha(theta) must be monotone: a
/// member at a larger alpha must be a member at every smaller alpha.
template <class Data, class Aux, class Param>
NestingReport check_nested_support(const Association<Data, Aux, Param>& assoc,
                                   const RandomSetFamily<Aux, Param>& rs, const Param& theta,
                                   std::vector<double> alphas, const MCConfig& mc,
                                   Execution exec = Execution::parallel) {
  std::sort(alphas.begin(), alphas.end());
  const std::vector<Aux> draws = draw_aux(assoc, mc, exec);
  NestingReport report;
  report.draws_checked = draws.size();
  for (std::size_t i = 0; i < draws.size(); ++i) {
    std::vector<bool> in(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) in[k] = rs.support_member(draws[i], AlphaLevel(alphas[k]), theta);
    for (std::size_t hi = 1; hi < alphas.size(); ++hi) {
      for (std::size_t lo = 0; lo < hi; ++lo) {
        ++report.pairs_checked;
        if (in[hi] && !in[lo]) report.violations.push_back({i, alphas[hi], alphas[lo]});
      }
    }
  }
  return report;
}

enum class Compatibility { compatible, incompatible, inconclusive };

template <class Aux>
struct CompatibilityReport {
  Compatibility status = Compatibility::inconclusive;
  std::size_t accepted = 0;
  std::size_t reps = 0;
  std::vector<Aux> witnesses;
};

/// Is the union of focal sets over u in S_alpha(theta) non-empty? Samples u
/// from P_U and keeps those in the support; `probes` are additional
/// auxiliary points checked directly (points of probability zero, such as a
/// model's distinguished u(x)). Focal regions of unknown emptiness are
/// probed at `candidates`. Acceptance below 1e-4 with no witness is
/// inconclusive.
template <class Data, class Aux>
CompatibilityReport<Aux> check_compatibility(const Association<Data, Aux, ParamPoint>& assoc,
                                             const RandomSetFamily<Aux, ParamPoint>& rs, const Data& x,
                                             const ParamPoint& theta, AlphaLevel alpha, const MCConfig& mc,
                                             const std::vector<Aux>& probes = {},
                                             const std::vector<ParamPoint>& candidates = {}) {
  auto focal_nonempty = [&](const Aux& u) {
    const Region r = assoc.focal(x, u);
    if (auto known = r.is_empty()) return !*known;
    return std::any_of(candidates.begin(), candidates.end(), [&](const ParamPoint& c) { return r.contains(c); });
  };
  CompatibilityReport<Aux> report;
  for (const Aux& u : probes) {
    if (rs.support_member(u, alpha, theta) && focal_nonempty(u)) report.witnesses.push_back(u);
  }
  const std::vector<Aux> draws = draw_aux(assoc, mc, Execution::serial);
  report.reps = draws.size();
  for (const Aux& u : draws) {
    if (!rs.support_member(u, alpha, theta)) continue;
    ++report.accepted;
    if (report.witnesses.size() < 16 && focal_nonempty(u)) report.witnesses.push_back(u);
  }
  const double acceptance = static_cast<double>(report.accepted) / static_cast<double>(std::max<std::size_t>(1, report.reps));
  if (!report.witnesses.empty())
    report.status = Compatibility::compatible;
  else if (acceptance < 1e-4)
    report.status = Compatibility::inconclusive;
  else
    report.status = Compatibility::incompatible;
  return report;
}

}  // namespace imconf
