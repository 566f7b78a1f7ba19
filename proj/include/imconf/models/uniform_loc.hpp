#pragma once

// X1..Xn iid Unif(theta, theta + 1), reduced to (min, max).

#include <vector>

#include "imconf/core.hpp"
#include "imconf/imcore.hpp"
#include "imconf/validity.hpp"

namespace imconf::models::uniform_loc {

struct UnifData {
  double x1 = 0.0;  // minimum
  double x2 = 0.0;  // maximum
  void validate() const;
  double range() const { return x2 - x1; }
  /// (x1 + x2 - 1) / 2
  double center() const { return 0.5 * (x1 + x2 - 1.0); }
};

struct UnifAux {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Flat-prior equi-tailed interval [x1 - (1-d)(1 - alpha/2), x1 - (1-d) alpha/2].
Interval credible_interval(const UnifData& x, double alpha);

ConfidenceFamily<UnifData> credible_family();

/// 2 min(r, 1 - r) with r = (x1 - theta)/(1 - d) on [x2 - 1, x1], else 0.
double contour(const UnifData& x, double theta);

/// X = theta 1 + U, U the (min, max) of n uniforms.
Association<UnifData, UnifAux> association(int n);

/// alpha/(2 - alpha) (1 - u2) <= u1 <= (2 - alpha)/alpha (1 - u2); exact
/// mass 1 - alpha.
RandomSetFamily<UnifAux> random_set();

/// u(x) = x - center(x) 1, which lies in every support set.
UnifAux special_point(const UnifData& x);

SamplingModel<UnifData> sampling_model(int n);

}  // namespace imconf::models::uniform_loc
