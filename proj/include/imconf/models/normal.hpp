#pragma once

// X ~ N(theta, 1): the pivot family, its IM, and the integrated confidence
// distribution of |theta|.

#include <vector>

#include "imconf/core.hpp"
#include "imconf/imcore.hpp"
#include "imconf/validity.hpp"

namespace imconf::models::normal {

/// 2(1 - Phi(|x - theta|)).
double pivot_contour(double x, double theta);

/// C_alpha(x) = x +- z_{1-alpha/2}.
ConfidenceFamily<double> pivot_family();

/// X = theta + U, U ~ N(0,1).
Association<double, double> association();

/// S_alpha = {u : |u| <= z_{1-alpha/2}}, exact mass 1 - alpha.
RandomSetFamily<double> random_set();

SamplingModel<double> sampling_model();

/// H_x(phi) = Phi(phi - x) - Phi(-phi - x): the CDF of |theta| under the
/// N(x,1) confidence distribution. Throws ParameterError for phi < 0.
double cd_abs_value(double x, double phi);

/// P(H_X(phi) <= h) for X ~ N(mean, 1), in closed form.
double cd_abs_value_law(double h, double mean, double phi);

/// reps draws of H_X(phi) with X ~ N(mean, 1).
std::vector<double> cd_abs_draws(double mean, double phi, const MCConfig& mc,
                                 Execution exec = Execution::parallel);

}  // namespace imconf::models::normal
