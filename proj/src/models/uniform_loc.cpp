#include "imconf/models/uniform_loc.hpp"

#include <cmath>

#include "imconf/dist.hpp"

namespace imconf::models::uniform_loc {

void UnifData::validate() const {
  if (!(x2 >= x1)) throw ParameterError("uniform_loc: maximum below minimum");
  if (!(x2 - x1 <= 1.0)) throw ParameterError("uniform_loc: range exceeds 1");
}

Interval credible_interval(const UnifData& x, double alpha) {
  x.validate();
  const double w = 1.0 - x.range();
  return Interval{x.x1 - w * (1.0 - 0.5 * alpha), x.x1 - w * 0.5 * alpha, true, true};
}

ConfidenceFamily<UnifData> credible_family() {
  ConfidenceFamily<UnifData> f;
  f.member = [](const UnifData& x, AlphaLevel a, const ParamPoint& theta) {
    return credible_interval(x, a.value()).contains(theta[0]);
  };
  f.center = [](const UnifData& x) { return ParamPoint{x.center()}; };
  return f;
}

double contour(const UnifData& x, double theta) {
  x.validate();
  const double w = 1.0 - x.range();
  if (w <= 0.0) return theta == x.x1 ? 1.0 : 0.0;
  if (theta < x.x2 - 1.0 || theta > x.x1) return 0.0;
  const double r = (x.x1 - theta) / w;
  return std::clamp(2.0 * std::min(r, 1.0 - r), 0.0, 1.0);
}

Association<UnifData, UnifAux> association(int n) {
  if (n < 2) throw ParameterError("uniform_loc: n must be >= 2");
  Association<UnifData, UnifAux> a;
  a.forward = [](const ParamPoint& theta, const UnifAux& u) { return UnifData{theta[0] + u.u1, theta[0] + u.u2}; };
  a.fiber = [](const UnifData& x, const ParamPoint& theta) {
    const UnifAux u{x.x1 - theta[0], x.x2 - theta[0]};
    if (u.u1 < 0.0 || u.u2 > 1.0 || u.u1 > u.u2) return std::vector<UnifAux>{};
    return std::vector<UnifAux>{u};
  };
  a.focal = [](const UnifData& x, const UnifAux& u) {
    const double t1 = x.x1 - u.u1, t2 = x.x2 - u.u2;
    if (std::fabs(t1 - t2) > 1e-12 * (1.0 + std::fabs(t1))) return Region::empty();
    return Region::interval(t1, t1);
  };
  a.aux_sampler = [n](CounterRng& rng) {
    const auto mm = dist::draw_uniform_minmax(n, rng);
    return UnifAux{mm.min, mm.max};
  };
  return a;
}

RandomSetFamily<UnifAux> random_set() {
  RandomSetFamily<UnifAux> rs;
  rs.support_member = [](const UnifAux& u, AlphaLevel a, const ParamPoint&) {
    const double al = a.value();
    const double b = 1.0 - u.u2;
    return al / (2.0 - al) * b <= u.u1 && u.u1 <= (2.0 - al) / al * b;
  };
  rs.exact_mass = [](AlphaLevel a, const ParamPoint&) { return 1.0 - a.value(); };
  return rs;
}

UnifAux special_point(const UnifData& x) {
  const double c = x.center();
  return UnifAux{x.x1 - c, x.x2 - c};
}

SamplingModel<UnifData> sampling_model(int n) {
  if (n < 2) throw ParameterError("uniform_loc: n must be >= 2");
  SamplingModel<UnifData> m;
  m.draw = [n](const ParamPoint& theta, CounterRng& rng) {
    const auto mm = dist::draw_uniform_minmax(n, rng);
    return UnifData{theta[0] + mm.min, theta[0] + mm.max};
  };
  for (double t : {-1.0, 0.0, 2.5}) m.param_grid_hint.push_back(ParamPoint{t});
  return m;
}

}  // namespace imconf::models::uniform_loc
