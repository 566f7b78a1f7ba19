#pragma once

// Nonparametric inference on a CDF F from an iid sample, through the
// Dvoretzky–Kiefer–Wolfowitz band.

#include <functional>
#include <vector>

#include "imconf/imcore.hpp"
#include "imconf/rng.hpp"

namespace imconf::models::dkw {

/// Sorted observations.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values);
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& values() const { return x_; }
  /// F_n(t) and F_n(t-).
  double ecdf(double t) const;
  double ecdf_left(double t) const;

 private:
  std::vector<double> x_;
};

/// A candidate distribution function: right-continuous value, left limit,
/// and the locations of its jumps (empty for continuous F).
struct CandidateCdf {
  std::function<double(double)> value;
  std::function<double(double)> left;
  std::vector<double> jumps;

  static CandidateCdf continuous(std::function<double(double)> f);
  /// Right-continuous step function with value levels[i] on [at[i], at[i+1])
  /// and 0 before at[0].
  static CandidateCdf step(std::vector<double> at, std::vector<double> levels);
};

/// sqrt(log(2/alpha) / (2n)).
double dkw_delta(std::size_t n, double alpha);

struct Band {
  double delta = 0.0;
  CandidateCdf lower;
  CandidateCdf upper;
};

/// [max(F_n - delta, 0), min(F_n + delta, 1)] as step functions.
Band dkw_band(const EmpiricalSample& x, double alpha);

/// sup_t |F_n(t) - F(t)| over both one-sided limits at every jump of F_n and
/// of F. Throws ParameterError if F decreases across the evaluation points
/// or leaves [0,1].
double sup_norm(const EmpiricalSample& x, const CandidateCdf& f);

/// min{1, 2 exp(-2 n s^2)} with s = sup_norm(x, F).
double alpha_index(const EmpiricalSample& x, const CandidateCdf& f);

/// Monte Carlo law of D_n = sup |G_n(u) - u| for n uniforms; computed once
/// and shared by every evaluation (the support sets do not depend on F).
class KsNullTable {
 public:
  KsNullTable(std::size_t n, const MCConfig& mc, Execution exec = Execution::parallel);
  std::size_t n() const { return n_; }
  std::size_t reps() const { return sorted_.size(); }
  /// P{D_n > s}.
  double exceed(double s) const;
  /// P{D_n <= s}.
  double mass(double s) const { return 1.0 - exceed(s); }

 private:
  std::size_t n_;
  std::vector<double> sorted_;
};

struct DkwResult {
  double sup_norm = 0.0;
  double alpha_index = 0.0;
  double plaus = 0.0;
  double se = 0.0;
};

/// alpha index and pl_x({F}) = P{D_n > ||F_n - F||}, which is
/// 1 - P_U(S_{alpha(x,F)}) whenever the index is below 1.
DkwResult dkw_contour(const EmpiricalSample& x, const CandidateCdf& f, const KsNullTable& table);

/// n draws from Exp(1).
EmpiricalSample synthetic_sample(std::size_t n = 799, std::uint64_t seed = 20160799);

/// X_i = F^{-1}(U_i) with the candidate's quantile function; the fiber at
/// (x, F) is the sorted vector F(x_i).
struct Candidate {
  CandidateCdf cdf;
  std::function<double(double)> quantile;
};

using Uniforms = std::vector<double>;

Association<EmpiricalSample, Uniforms, Candidate> association(std::size_t n);

/// S_alpha = {u : sup |G_u - I| <= delta_{n,alpha}}, free of F.
RandomSetFamily<Uniforms, Candidate> random_set(std::size_t n);

/// Exp(rate) as a candidate.
Candidate exponential(double rate);

}  // namespace imconf::models::dkw
