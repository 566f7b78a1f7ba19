#pragma once

#include <cstdint>
#include <vector>

#include "imconf/parallel.hpp"
#include "imconf/rng.hpp"

namespace imconf::dist {

enum class Family { normal, student_t, chi_square, binomial, uniform01 };

/// A distribution from the five families the models need. Construct through
/// the named factories; validate() rejects out-of-range parameters.
struct DistSpec {
  Family family = Family::normal;
  double df = 0.0;  // student_t, chi_square
  int n = 0;        // binomial
  double p = 0.0;   // binomial

  static DistSpec normal() { return {Family::normal}; }
  static DistSpec student_t(double df) { return {Family::student_t, df}; }
  static DistSpec chi_square(double df) { return {Family::chi_square, df}; }
  static DistSpec binomial(int n, double p) { return {Family::binomial, 0.0, n, p}; }
  static DistSpec uniform01() { return {Family::uniform01}; }

  void validate() const;
};

double cdf(const DistSpec& spec, double x);

/// Continuous families: inverse CDF to 1e-10 or better. Binomial: the
/// smallest k with cdf(k) >= p. Throws ParameterError unless 0 < p < 1.
double quantile(const DistSpec& spec, double p);

/// One draw. Normal uses inversion of a uniform; chi-square uses the
/// Marsaglia–Tsang gamma method; binomial uses the inversion
/// "smallest x with F(x) >= u".
double draw(const DistSpec& spec, CounterRng& rng);

/// mc.reps draws; draw i comes from substream(mc, i).
std::vector<double> sample(const DistSpec& spec, const MCConfig& mc,
                           Execution exec = Execution::parallel);

// Evaluators used directly by the models.

double log_gamma(double x);
double normal_pdf(double x);
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate in the far tail.
double normal_sf(double x);
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);
/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

double student_t_cdf(double t, double df);
double student_t_pdf(double t, double df);
double chi_square_cdf(double x, double df);

double binomial_pmf(int k, int n, double p);
/// P(X <= k); 0 for k < 0 and 1 for k >= n.
double binomial_cdf(int k, int n, double p);
/// P(X > k), summed over the upper tail.
double binomial_sf(int k, int n, double p);

double draw_standard_normal(CounterRng& rng);
double draw_chi_square(double df, CounterRng& rng);
int draw_binomial(int n, double p, CounterRng& rng);

/// Minimum and maximum of n iid Unif(0,1) variables.
struct MinMax {
  double min;
  double max;
};
MinMax draw_uniform_minmax(int n, CounterRng& rng);

}  // namespace imconf::dist
