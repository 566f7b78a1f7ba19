#include "imconf/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "imconf/errors.hpp"

namespace imconf::dist {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 2000;

// Modified Lentz continued fraction for I_x(a,b) (Numerical Recipes 6.4).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("reg_inc_beta: continued fraction did not converge (a=" +
                       std::to_string(a) + ", b=" + std::to_string(b) +
                       ", x=" + std::to_string(x) + ")");
}

// Bisection inverse for a continuous non-decreasing cdf.
template <class Cdf>
double invert_continuous(Cdf&& F, double p, double start, double floor_x) {
  double lo = start - 1.0, hi = start + 1.0;
  if (lo < floor_x) lo = floor_x;
  double step = 1.0;
  int guard = 0;
  while (F(lo) >= p && lo > floor_x && guard++ < 200) {
    step *= 2.0;
    lo = std::max(floor_x, lo - step);
  }
  step = 1.0;
  guard = 0;
  while (F(hi) < p && guard++ < 200) {
    step *= 2.0;
    hi += step;
  }
  if (F(hi) < p) throw NumericalError("quantile: could not bracket p=" + std::to_string(p));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(mid))) break;
    if (F(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void require_open_unit(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0))
    throw ParameterError(std::string(who) + ": probability must lie in (0,1), got " +
                         std::to_string(p));
}

double draw_gamma(double shape, CounterRng& rng) {
  if (shape < 1.0) {
    const double g = draw_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / shape);
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = draw_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

void DistSpec::validate() const {
  switch (family) {
    case Family::normal:
    case Family::uniform01:
      return;
    case Family::student_t:
    case Family::chi_square:
      if (!(df >= 1.0) || !std::isfinite(df))
        throw ParameterError("DistSpec: degrees of freedom must be >= 1, got " + std::to_string(df));
      return;
    case Family::binomial:
      if (n < 1) throw ParameterError("DistSpec: binomial n must be >= 1, got " + std::to_string(n));
      if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError("DistSpec: binomial p must lie in [0,1], got " + std::to_string(p));
      return;
  }
  throw ParameterError("DistSpec: unknown family");
}

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  require_open_unit(p, "normal_quantile");
  // Wichura (1988), algorithm AS 241 (PPND16).
  const double q = p - 0.5;
  double x;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    x = q *
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
             45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608) /
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
             21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
  } else {
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
      r -= 1.6;
      x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r + 4.6303378461565452959) * r +
           1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r + 2.05319162663775882187) * r +
           1.0);
    } else {
      r -= 5.0;
      x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r + 5.4637849111641143699) * r +
           6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r + 0.59983220655588793769) * r +
           1.0);
    }
    if (q < 0.0) x = -x;
  }
  // One Newton step against the erfc-based cdf.
  const double dens = normal_pdf(x);
  if (dens > 1e-300) x -= (normal_cdf(x) - p) / dens;
  return x;
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ParameterError("reg_inc_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw ParameterError("reg_lower_gamma: a must be positive");
  if (x <= 0.0) return 0.0;
  const double log_front = -x + a * std::log(x) - log_gamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) return sum * std::exp(log_front);
    }
    throw NumericalError("reg_lower_gamma: series did not converge");
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return 1.0 - std::exp(log_front) * h;
  }
  throw NumericalError("reg_lower_gamma: continued fraction did not converge");
}

double student_t_cdf(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double t2 = t * t;
  if (t2 < df) {
    // Near zero the complementary form keeps full precision.
    const double central = 0.5 * reg_inc_beta(0.5, 0.5 * df, t2 / (df + t2));
    return t > 0.0 ? 0.5 + central : 0.5 - central;
  }
  const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + t2));
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_pdf(double t, double df) {
  return std::exp(log_gamma(0.5 * (df + 1.0)) - log_gamma(0.5 * df) -
                  0.5 * std::log(df * std::numbers::pi) - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

double chi_square_cdf(double x, double df) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return reg_lower_gamma(0.5 * df, 0.5 * x);
}

double binomial_pmf(int k, int n, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double log_pmf = log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0) +
                         k * std::log(p) + (n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

double binomial_cdf(int k, int n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) sum += binomial_pmf(j, n, p);
  return std::min(sum, 1.0);
}

double binomial_sf(int k, int n, double p) {
  if (k < 0) return 1.0;
  if (k >= n) return 0.0;
  double sum = 0.0;
  for (int j = n; j > k; --j) sum += binomial_pmf(j, n, p);
  return std::min(sum, 1.0);
}

double cdf(const DistSpec& spec, double x) {
  spec.validate();
  switch (spec.family) {
    case Family::normal:
      return normal_cdf(x);
    case Family::student_t:
      return student_t_cdf(x, spec.df);
    case Family::chi_square:
      return chi_square_cdf(x, spec.df);
    case Family::binomial:
      if (x < 0.0) return 0.0;
      return binomial_cdf(static_cast<int>(std::floor(std::min(x, 1e9))), spec.n, spec.p);
    case Family::uniform01:
      return std::clamp(x, 0.0, 1.0);
  }
  throw ParameterError("cdf: unknown family");
}

double quantile(const DistSpec& spec, double p) {
  spec.validate();
  require_open_unit(p, "quantile");
  switch (spec.family) {
    case Family::normal:
      return normal_quantile(p);
    case Family::student_t: {
      const double df = spec.df;
      return invert_continuous([df](double t) { return student_t_cdf(t, df); }, p,
                               normal_quantile(p), -std::numeric_limits<double>::infinity());
    }
    case Family::chi_square: {
      const double df = spec.df;
      return invert_continuous([df](double x) { return chi_square_cdf(x, df); }, p, df, 0.0);
    }
    case Family::binomial: {
      double acc = 0.0;
      for (int k = 0; k < spec.n; ++k) {
        acc += binomial_pmf(k, spec.n, spec.p);
        if (acc >= p) return k;
      }
      return spec.n;
    }
    case Family::uniform01:
      return p;
  }
  throw ParameterError("quantile: unknown family");
}

double draw_standard_normal(CounterRng& rng) { return normal_quantile(rng.uniform()); }

double draw_chi_square(double df, CounterRng& rng) { return 2.0 * draw_gamma(0.5 * df, rng); }

int draw_binomial(int n, double p, CounterRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    acc += binomial_pmf(k, n, p);
    if (acc >= u) return k;
  }
  return n;
}

MinMax draw_uniform_minmax(int n, CounterRng& rng) {
  if (n < 1) throw ParameterError("draw_uniform_minmax: n must be >= 1");
  const double mx = std::pow(rng.uniform(), 1.0 / n);
  if (n == 1) return {mx, mx};
  // Given the maximum, the other n-1 points are iid Unif(0, max).
  const double mn = mx * (1.0 - std::pow(rng.uniform(), 1.0 / (n - 1)));
  return {mn, mx};
}

double draw(const DistSpec& spec, CounterRng& rng) {
  switch (spec.family) {
    case Family::normal:
      return draw_standard_normal(rng);
    case Family::student_t:
      return draw_standard_normal(rng) / std::sqrt(draw_chi_square(spec.df, rng) / spec.df);
    case Family::chi_square:
      return draw_chi_square(spec.df, rng);
    case Family::binomial:
      return draw_binomial(spec.n, spec.p, rng);
    case Family::uniform01:
      return rng.uniform();
  }
  throw ParameterError("draw: unknown family");
}

std::vector<double> sample(const DistSpec& spec, const MCConfig& mc, Execution exec) {
  spec.validate();
  mc.validate();
  return map_index<double>(mc.reps, exec, [&](std::size_t i) {
    CounterRng rng = substream(mc, i);
    return draw(spec, rng);
  });
}

}  // namespace imconf::dist
