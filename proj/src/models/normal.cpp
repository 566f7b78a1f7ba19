#include "imconf/models/normal.hpp"

#include <cmath>

#include "imconf/dist.hpp"

namespace imconf::models::normal {

double pivot_contour(double x, double theta) { return std::min(1.0, 2.0 * dist::normal_sf(std::fabs(x - theta))); }

ConfidenceFamily<double> pivot_family() {
  ConfidenceFamily<double> f;
  f.member = [](const double& x, AlphaLevel a, const ParamPoint& theta) {
    return std::fabs(x - theta[0]) <= dist::normal_quantile(1.0 - 0.5 * a.value());
  };
  f.center = [](const double& x) { return ParamPoint{x}; };
  return f;
}

Association<double, double> association() {
  Association<double, double> a;
  a.forward = [](const ParamPoint& theta, const double& u) { return theta[0] + u; };
  a.fiber = [](const double& x, const ParamPoint& theta) { return std::vector<double>{x - theta[0]}; };
  a.focal = [](const double& x, const double& u) { return Region::interval(x - u, x - u); };
  a.aux_sampler = [](CounterRng& rng) { return dist::draw_standard_normal(rng); };
  return a;
}

RandomSetFamily<double> random_set() {
  RandomSetFamily<double> rs;
  rs.support_member = [](const double& u, AlphaLevel a, const ParamPoint&) {
    return std::fabs(u) <= dist::normal_quantile(1.0 - 0.5 * a.value());
  };
  rs.exact_mass = [](AlphaLevel a, const ParamPoint&) { return 1.0 - a.value(); };
  return rs;
}

SamplingModel<double> sampling_model() {
  SamplingModel<double> m;
  m.draw = [](const ParamPoint& theta, CounterRng& rng) { return theta[0] + dist::draw_standard_normal(rng); };
  for (int k = -4; k <= 4; ++k) m.param_grid_hint.push_back(ParamPoint{0.5 * k});
  return m;
}

double cd_abs_value(double x, double phi) {
  if (phi < 0.0) throw ParameterError("cd_abs_value: phi must be non-negative");
  return std::max(0.0, dist::normal_cdf(phi - x) - dist::normal_cdf(-phi - x));
}

double cd_abs_value_law(double h, double mean, double phi) {
  if (h <= 0.0) return 0.0;
  const double top = cd_abs_value(0.0, phi);  // H is maximal at x = 0
  if (h >= top) return 1.0;
  // H_x(phi) is symmetric in x and decreasing in |x|; find x_h >= 0 with H = h.
  double lo = 0.0, hi = 1.0;
  while (cd_abs_value(hi, phi) > h) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cd_abs_value(mid, phi) > h)
      lo = mid;
    else
      hi = mid;
  }
  const double xh = 0.5 * (lo + hi);
  return dist::normal_cdf(-xh - mean) + dist::normal_sf(xh - mean);
}

std::vector<double> cd_abs_draws(double mean, double phi, const MCConfig& mc, Execution exec) {
  mc.validate();
  return map_index<double>(mc.reps, exec, [&](std::size_t i) {
    CounterRng rng = substream(mc, i);
    return cd_abs_value(mean + dist::draw_standard_normal(rng), phi);
  });
}

}  // namespace imconf::models::normal
