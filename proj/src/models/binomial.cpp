#include "imconf/models/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imconf/dist.hpp"

namespace imconf::models::binomial {

using dist::binomial_cdf;
using dist::binomial_pmf;
using dist::binomial_sf;

void BinomialData::validate() const {
  if (n < 1) throw ParameterError("binomial: n must be >= 1");
  if (x < 0 || x > n) throw ParameterError("binomial: x must lie in [0, n], got " + std::to_string(x));
}

bool cp_member(int n, int x, double alpha, double theta) {
  return binomial_cdf(x, n, theta) >= 0.5 * alpha && binomial_sf(x - 1, n, theta) >= 0.5 * alpha;
}

ConfidenceFamily<BinomialData> cp_family() {
  ConfidenceFamily<BinomialData> f;
  f.member = [](const BinomialData& d, AlphaLevel a, const ParamPoint& theta) {
    return cp_member(d.n, d.x, a.value(), theta[0]);
  };
  f.center = [](const BinomialData& d) { return ParamPoint{static_cast<double>(d.x) / d.n}; };
  return f;
}

namespace {

// Root of a monotone function of theta on [0,1]; `up` is true when f increases.
template <class F>
double bisect_theta(F&& f, double target, bool up) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < target) == up)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Interval cp_interval(int n, int x, double alpha) {
  BinomialData{n, x}.validate();
  const double lo = x == 0 ? 0.0 : bisect_theta([&](double t) { return binomial_sf(x - 1, n, t); }, 0.5 * alpha, true);
  const double hi = x == n ? 1.0 : bisect_theta([&](double t) { return binomial_cdf(x, n, t); }, 0.5 * alpha, false);
  return Interval{lo, hi, true, true};
}

bool middle_branch(int n, int x, double theta) {
  return binomial_cdf(x - 1, n, theta) <= 0.5 && binomial_cdf(x, n, theta) >= 0.5;
}

double cp_contour(int n, int x, double theta) {
  if (middle_branch(n, x, theta)) return 1.0;
  if (binomial_cdf(x - 1, n, theta) > 0.5) return std::min(1.0, 2.0 * binomial_sf(x - 1, n, theta));
  return std::min(1.0, 2.0 * binomial_cdf(x, n, theta));
}

double binom_g(int n, int x, double theta) {
  const double a = cp_contour(n, x, theta);
  double g = 0.0;
  for (int k = 0; k <= n; ++k) {
    if (binomial_cdf(k, n, theta) > 0.5 * a && binomial_sf(k - 1, n, theta) > 0.5 * a) g += binomial_pmf(k, n, theta);
  }
  return std::min(1.0, g);
}

double im_contour(int n, int x, double theta) {
  if (middle_branch(n, x, theta)) return 1.0;
  return std::clamp(1.0 - binom_g(n, x, theta), 0.0, 1.0);
}

Association<BinomialData, double> association(int n) {
  Association<BinomialData, double> a;
  a.forward = [n](const ParamPoint& theta, const double& u) {
    int k = 0;
    while (k < n && binomial_cdf(k, n, theta[0]) < u) ++k;
    return BinomialData{n, k};
  };
  a.fiber = [](const BinomialData& d, const ParamPoint& theta) {
    if (binomial_pmf(d.x, d.n, theta[0]) <= 0.0) return std::vector<double>{};
    return std::vector<double>{binomial_cdf(d.x, d.n, theta[0])};
  };
  a.focal = [](const BinomialData& d, const double& u) {
    // theta -> F_theta(k) is decreasing: F(x-1) < u <= F(x) is an interval.
    const double hi =
        d.x == d.n ? 1.0 : bisect_theta([&](double t) { return binomial_cdf(d.x, d.n, t); }, u, false);
    if (d.x == 0) return Region::interval(0.0, hi, true, true);
    const double lo = bisect_theta([&](double t) { return binomial_cdf(d.x - 1, d.n, t); }, u, false);
    return Region::interval(lo, hi, false, true);
  };
  a.aux_sampler = [](CounterRng& rng) { return rng.uniform(); };
  return a;
}

RandomSetFamily<double> random_set(int n) {
  RandomSetFamily<double> rs;
  rs.support_member = [n](const double& u, AlphaLevel a, const ParamPoint& theta) {
    int k = 0;
    while (k < n && binomial_cdf(k, n, theta[0]) < u) ++k;
    return cp_member(n, k, a.value(), theta[0]);
  };
  rs.exact_mass = [n](AlphaLevel a, const ParamPoint& theta) {
    double m = 0.0;
    for (int k = 0; k <= n; ++k)
      if (cp_member(n, k, a.value(), theta[0])) m += binomial_pmf(k, n, theta[0]);
    return std::min(1.0, m);
  };
  return rs;
}

SamplingModel<BinomialData> sampling_model(int n) {
  SamplingModel<BinomialData> m;
  m.draw = [n](const ParamPoint& theta, CounterRng& rng) {
    return BinomialData{n, dist::draw_binomial(n, theta[0], rng)};
  };
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) m.param_grid_hint.push_back(ParamPoint{t});
  return m;
}

}  // namespace imconf::models::binomial
