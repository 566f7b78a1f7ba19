#pragma once

// X ~ Bin(n, theta): the Clopper–Pearson family and the IM built from it.

#include "imconf/core.hpp"
#include "imconf/imcore.hpp"
#include "imconf/validity.hpp"

namespace imconf::models::binomial {

struct BinomialData {
  int n = 0;
  int x = 0;
  void validate() const;
};

/// F_theta(x) >= alpha/2 and 1 - F_theta(x-1) >= alpha/2.
bool cp_member(int n, int x, double alpha, double theta);

ConfidenceFamily<BinomialData> cp_family();

/// The Clopper–Pearson interval [lo, hi] at level alpha.
Interval cp_interval(int n, int x, double alpha);

/// alpha(x, theta): 1 when F(x-1) <= 1/2 <= F(x), else 2(1 - F(x-1)) or
/// 2F(x) for the upper and lower branches, capped at 1.
double cp_contour(int n, int x, double theta);

/// True in the branch where cp_contour is 1.
bool middle_branch(int n, int x, double theta);

/// g(theta, x) = sum_{x'} pmf(x') 1{F(x') > a/2 and F(x'-1) < 1 - a/2}
/// with a = cp_contour(n, x, theta).
double binom_g(int n, int x, double theta);

/// 1 in the middle branch, 1 - g(theta, x) otherwise.
double im_contour(int n, int x, double theta);

/// X = min{x : F_theta(x) >= U}, U ~ Unif(0,1).
Association<BinomialData, double> association(int n);

/// S_alpha(theta) = {u : the CP region at alpha for x(u) contains theta}.
/// Exact mass by enumeration.
RandomSetFamily<double> random_set(int n);

SamplingModel<BinomialData> sampling_model(int n);

}  // namespace imconf::models::binomial
