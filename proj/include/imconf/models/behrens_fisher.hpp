#pragma once

// Two normal samples with unequal variances; interest in mu1 - mu2.
// theta = (mu1, mu2, sigma1^2, sigma2^2).

#include <vector>

#include "imconf/core.hpp"
#include "imconf/imcore.hpp"
#include "imconf/validity.hpp"

namespace imconf::models::behrens_fisher {

struct BFData {
  int n1 = 0;
  int n2 = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;

  void validate() const;
  double d() const { return m1 - m2; }
  /// sqrt(v1/n1 + v2/n2)
  double f() const;
  /// min(n1, n2) - 1
  int df() const;
  /// (d - phi) / f
  double t(double phi) const;
};

/// Travel-time data for two routes: n1 = 5, m1 = 7.580, v1 = 2.237 and
/// n2 = 11, m2 = 6.136, v2 = 0.073.
BFData lehmann_data();

/// 2(1 - F_df(|t|)).
double hs_contour(const BFData& x, double phi);

/// d -+ t*_{alpha} f, with t* the 1 - alpha/2 quantile of t_df.
Interval hs_interval(const BFData& x, double alpha);

/// Family over phi: |t(phi)| <= t*_alpha.
ConfidenceFamily<BFData> hs_family();

/// (sigma1^2/n1) / (sigma1^2/n1 + sigma2^2/n2).
double lambda_of(const ParamPoint& theta, int n1, int n2);

struct BFAux {
  double u1 = 0.0;
  double u21 = 0.0;
  double u22 = 0.0;
};

/// |U1| / sqrt(lambda U21 + (1 - lambda) U22).
double t_lambda(const BFAux& u, double lambda);

/// D = (mu1 - mu2) + f(sigma) U1, Vk = sigma_k^2 U2k with U1 ~ N(0,1) and
/// U2k ~ ChiSq(nk - 1)/(nk - 1). The fiber is a single point.
Association<BFData, BFAux> association(int n1, int n2);

/// S_alpha(theta) = {u : t_lambda(u, lambda_theta) <= t*_alpha}.
RandomSetFamily<BFAux> random_set(int n1, int n2);

SamplingModel<BFData> sampling_model(int n1, int n2);

/// Sorted |T_lambda| over common draws, one row per lambda. pl for a given
/// lambda and |t| is the fraction of draws with |T_lambda| > |t|.
class LambdaTable {
 public:
  LambdaTable(int n1, int n2, std::vector<double> lambdas, const MCConfig& mc,
              Execution exec = Execution::parallel);

  /// 101 equally spaced lambdas in [0, 1].
  static std::vector<double> default_grid(std::size_t n = 101);

  std::size_t size() const { return lambdas_.size(); }
  double lambda(std::size_t i) const { return lambdas_[i]; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  std::size_t reps() const { return reps_; }

  /// P{|T_lambda_i| > abs_t}.
  double exceed(std::size_t i, double abs_t) const;
  /// P{|T_lambda| > abs_t} for any lambda, by a pass over the raw draws.
  double exceed_at(double lambda, double abs_t) const;
  /// Row of a lambda equal to `lambda` within 1e-9, or size().
  std::size_t find(double lambda) const;

 private:
  std::vector<double> lambdas_;
  std::size_t reps_;
  std::vector<BFAux> draws_;
  std::vector<std::vector<double>> sorted_;
};

/// Lambda-specific contour at phi: P{|T_lambda| > |t(phi)|}.
double bf_lambda_plaus(const LambdaTable& table, const BFData& x, double phi, std::size_t lambda_row);
double bf_lambda_plaus(const BFData& x, double phi, double lambda, const MCConfig& mc);

/// max over the table's lambdas of bf_lambda_plaus.
double bf_marginal_contour(const LambdaTable& table, const BFData& x, double phi);

/// Fused contour over theta: pl_x({theta} | theta) with lambda_theta read
/// from theta. Witness (d + m2, m2, v1, v2).
PlausibilityContour<> fused_contour(const BFData& x, const LambdaTable& table);

/// mu1 - mu2.
ParamPoint interest(const ParamPoint& theta);

/// The fiber over phi traced by lambda: sigma1^2/n1 = lambda,
/// sigma2^2/n2 = 1 - lambda, on the table's lambda grid.
FiberSpec lambda_fiber(const BFData& x, const LambdaTable& table, double phi);

}  // namespace imconf::models::behrens_fisher
