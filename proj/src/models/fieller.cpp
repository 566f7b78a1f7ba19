#include "imconf/models/fieller.hpp"

#include <cmath>
#include <limits>

#include "imconf/dist.hpp"

namespace imconf::models::fieller {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-10;

template <class F>
double simpson(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
               double& worst) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) {
    worst = std::max(worst, std::fabs(err) / 15.0);
    return left + right + err / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, worst) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, worst);
}

template <class F>
double integrate(F f, double a, double b, double tol, double& worst) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50, worst);
}

}  // namespace

double fieller_cdf(const FiellerData& x, double phi) {
  if (std::isnan(phi)) throw ParameterError("fieller_cdf: phi is NaN");
  if (phi == kInf) return 1.0 - dist::normal_cdf(-x.x2);  // P(theta2 > 0)
  if (phi == -kInf) return dist::normal_cdf(-x.x2);
  auto f = [&](double z) {
    const double dens = dist::normal_pdf(z - x.x2);
    return z > 0.0 ? dens * dist::normal_cdf(phi * z - x.x1) : dens * dist::normal_sf(phi * z - x.x1);
  };
  const double a = x.x2 - 10.0, b = x.x2 + 10.0;
  double worst = 0.0;
  double g;
  // The integrand jumps at z = 0; integrate the two sides separately.
  if (a < 0.0 && b > 0.0)
    g = integrate(f, a, 0.0, 0.5 * kQuadTol, worst) + integrate(f, 0.0, b, 0.5 * kQuadTol, worst);
  else
    g = integrate(f, a, b, kQuadTol, worst);
  if (worst > 1e-8)
    throw NumericalError("fieller_cdf: quadrature did not converge (achieved error " + std::to_string(worst) + ")");
  return std::clamp(g, 0.0, 1.0);
}

namespace {

double invert(const FiellerData& x, double p) {
  auto g = [&](double t) { return fieller_cdf(x, t) - p; };
  double lo = -1.0, hi = 1.0;
  int k = 0;
  while (g(lo) > 0.0 && k < 60) {
    lo *= 2.0;
    ++k;
  }
  if (g(lo) > 0.0) return -kInf;
  k = 0;
  while (g(hi) < 0.0 && k < 60) {
    hi *= 2.0;
    ++k;
  }
  if (g(hi) < 0.0) return kInf;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Interval fieller_interval(const FiellerData& x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("fieller_interval: alpha must lie in (0,1)");
  const double lo = invert(x, 0.5 * alpha);
  const double hi = invert(x, 1.0 - 0.5 * alpha);
  return Interval{lo, std::max(lo, hi), std::isfinite(lo), std::isfinite(hi)};
}

ConfidenceFamily<FiellerData> cd_family() {
  ConfidenceFamily<FiellerData> fam;
  fam.member = [](const FiellerData& x, AlphaLevel a, const ParamPoint& phi) {
    const double g = fieller_cdf(x, phi[0]);
    return g >= 0.5 * a.value() && g <= 1.0 - 0.5 * a.value();
  };
  fam.center = [](const FiellerData& x) { return ParamPoint{invert(x, 0.5)}; };
  return fam;
}

SamplingModel<FiellerData> sampling_model() {
  SamplingModel<FiellerData> m;
  m.draw = [](const ParamPoint& th, CounterRng& rng) {
    const double z1 = dist::draw_standard_normal(rng);
    const double z2 = dist::draw_standard_normal(rng);
    return FiellerData{th[0] + z1, th[1] + z2};
  };
  m.interest = [](const ParamPoint& th) { return ParamPoint{th[0] / th[1]}; };
  m.param_grid_hint.push_back(ParamPoint{1.0, 20.0});
  return m;
}

}  // namespace imconf::models::fieller
