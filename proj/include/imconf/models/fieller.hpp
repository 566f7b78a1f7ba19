#pragma once

// (X1, X2) ~ N2((theta1, theta2), I), interest phi = theta1/theta2, and the
// interval obtained from the integrated confidence distribution of phi.

#include "imconf/core.hpp"
#include "imconf/validity.hpp"

namespace imconf::models::fieller {

struct FiellerData {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// G_x(phi) = P(theta1/theta2 <= phi) when (theta1, theta2) ~ N2(x, I):
/// the integral over z of f(z - x2) F(phi z - x1) for z > 0 and
/// f(z - x2)(1 - F(phi z - x1)) for z < 0, over [x2 - 10, x2 + 10] by
/// adaptive Simpson to 1e-10. Throws NumericalError if the quadrature does
/// not converge.
double fieller_cdf(const FiellerData& x, double phi);

/// [G^{-1}(alpha/2), G^{-1}(1 - alpha/2)] by bisection; an endpoint whose
/// bracket cannot be found is infinite.
Interval fieller_interval(const FiellerData& x, double alpha);

/// alpha/2 <= G_x(phi) <= 1 - alpha/2.
ConfidenceFamily<FiellerData> cd_family();

SamplingModel<FiellerData> sampling_model();

}  // namespace imconf::models::fieller
