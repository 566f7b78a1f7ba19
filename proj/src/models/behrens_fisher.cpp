#include "imconf/models/behrens_fisher.hpp"

#include <algorithm>
#include <cmath>

#include "imconf/dist.hpp"

namespace imconf::models::behrens_fisher {

namespace {

double t_star(double alpha, int df) {
  // Support-mass loops ask for the same level once per draw.
  thread_local double last_alpha = -1.0;
  thread_local int last_df = -1;
  thread_local double last_value = 0.0;
  if (alpha != last_alpha || df != last_df) {
    last_value = dist::quantile(dist::DistSpec::student_t(df), 1.0 - 0.5 * alpha);
    last_alpha = alpha;
    last_df = df;
  }
  return last_value;
}

}  // namespace

void BFData::validate() const {
  if (n1 < 2 || n2 < 2) throw ParameterError("Behrens-Fisher: sample sizes must be >= 2");
  if (!(v1 > 0.0) || !(v2 > 0.0)) throw ParameterError("Behrens-Fisher: sample variances must be > 0");
  if (!std::isfinite(m1) || !std::isfinite(m2)) throw ParameterError("Behrens-Fisher: non-finite mean");
}

double BFData::f() const { return std::sqrt(v1 / n1 + v2 / n2); }
int BFData::df() const { return std::min(n1, n2) - 1; }
double BFData::t(double phi) const { return (d() - phi) / f(); }

BFData lehmann_data() { return BFData{5, 11, 7.580, 6.136, 2.237, 0.073}; }

double hs_contour(const BFData& x, double phi) {
  return std::min(1.0, 2.0 * dist::student_t_cdf(-std::fabs(x.t(phi)), x.df()));
}

Interval hs_interval(const BFData& x, double alpha) {
  const double w = t_star(alpha, x.df()) * x.f();
  return Interval{x.d() - w, x.d() + w, true, true};
}

ConfidenceFamily<BFData> hs_family() {
  ConfidenceFamily<BFData> fam;
  fam.member = [](const BFData& x, AlphaLevel a, const ParamPoint& phi) {
    return std::fabs(x.t(phi[0])) <= t_star(a.value(), x.df());
  };
  fam.center = [](const BFData& x) { return ParamPoint{x.d()}; };
  return fam;
}

double lambda_of(const ParamPoint& theta, int n1, int n2) {
  const double a1 = theta[2] / n1, a2 = theta[3] / n2;
  return a1 / (a1 + a2);
}

double t_lambda(const BFAux& u, double lambda) {
  return std::fabs(u.u1) / std::sqrt(lambda * u.u21 + (1.0 - lambda) * u.u22);
}

Association<BFData, BFAux> association(int n1, int n2) {
  Association<BFData, BFAux> a;
  a.forward = [n1, n2](const ParamPoint& th, const BFAux& u) {
    const double f = std::sqrt(th[2] / n1 + th[3] / n2);
    return BFData{n1, n2, th[0] + f * u.u1, th[1], th[2] * u.u21, th[3] * u.u22};
  };
  a.fiber = [](const BFData& x, const ParamPoint& th) {
    if (!(th[2] > 0.0) || !(th[3] > 0.0)) return std::vector<BFAux>{};
    const double f = std::sqrt(th[2] / x.n1 + th[3] / x.n2);
    return std::vector<BFAux>{{(x.d() - (th[0] - th[1])) / f, x.v1 / th[2], x.v2 / th[3]}};
  };
  a.focal = [](const BFData& x, const BFAux& u) {
    const double s1 = x.v1 / u.u21, s2 = x.v2 / u.u22;
    const double delta = x.d() - std::sqrt(s1 / x.n1 + s2 / x.n2) * u.u1;
    return Region::predicate([=](const ParamPoint& th) {
      auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(b)); };
      return th.dim() == 4 && close(th[2], s1) && close(th[3], s2) && close(th[0] - th[1], delta);
    });
  };
  a.aux_sampler = [n1, n2](CounterRng& rng) {
    BFAux u;
    u.u1 = dist::draw_standard_normal(rng);
    u.u21 = dist::draw_chi_square(n1 - 1, rng) / (n1 - 1);
    u.u22 = dist::draw_chi_square(n2 - 1, rng) / (n2 - 1);
    return u;
  };
  return a;
}

RandomSetFamily<BFAux> random_set(int n1, int n2) {
  RandomSetFamily<BFAux> rs;
  const int df = std::min(n1, n2) - 1;
  rs.support_member = [n1, n2, df](const BFAux& u, AlphaLevel a, const ParamPoint& th) {
    return t_lambda(u, lambda_of(th, n1, n2)) <= t_star(a.value(), df);
  };
  return rs;
}

SamplingModel<BFData> sampling_model(int n1, int n2) {
  SamplingModel<BFData> m;
  m.draw = [n1, n2](const ParamPoint& th, CounterRng& rng) {
    BFData x;
    x.n1 = n1;
    x.n2 = n2;
    x.m1 = th[0] + std::sqrt(th[2] / n1) * dist::draw_standard_normal(rng);
    x.m2 = th[1] + std::sqrt(th[3] / n2) * dist::draw_standard_normal(rng);
    x.v1 = th[2] * dist::draw_chi_square(n1 - 1, rng) / (n1 - 1);
    x.v2 = th[3] * dist::draw_chi_square(n2 - 1, rng) / (n2 - 1);
    return x;
  };
  m.interest = interest;
  const BFData l = lehmann_data();
  m.param_grid_hint.push_back(ParamPoint{l.m1, l.m2, l.v1, l.v2});
  return m;
}

LambdaTable::LambdaTable(int n1, int n2, std::vector<double> lambdas, const MCConfig& mc, Execution exec)
    : lambdas_(std::move(lambdas)), reps_(mc.reps) {
  mc.validate();
  for (double l : lambdas_)
    if (!(l >= 0.0 && l <= 1.0)) throw ParameterError("LambdaTable: lambda must lie in [0, 1]");
  const auto assoc = association(n1, n2);
  draws_ = draw_aux(assoc, mc, exec);
  sorted_ = map_index<std::vector<double>>(lambdas_.size(), exec, [&](std::size_t i) {
    std::vector<double> row(draws_.size());
    for (std::size_t r = 0; r < draws_.size(); ++r) row[r] = t_lambda(draws_[r], lambdas_[i]);
    std::sort(row.begin(), row.end());
    return row;
  });
}

std::vector<double> LambdaTable::default_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

double LambdaTable::exceed(std::size_t i, double abs_t) const {
  const auto& row = sorted_.at(i);
  const auto above = row.end() - std::upper_bound(row.begin(), row.end(), abs_t);
  return static_cast<double>(above) / static_cast<double>(row.size());
}

double LambdaTable::exceed_at(double lambda, double abs_t) const {
  const std::size_t i = find(lambda);
  if (i < size()) return exceed(i, abs_t);
  std::size_t above = 0;
  for (const auto& u : draws_) above += t_lambda(u, lambda) > abs_t ? 1 : 0;
  return static_cast<double>(above) / static_cast<double>(draws_.size());
}

std::size_t LambdaTable::find(double lambda) const {
  for (std::size_t i = 0; i < lambdas_.size(); ++i)
    if (std::fabs(lambdas_[i] - lambda) <= 1e-9) return i;
  return lambdas_.size();
}

double bf_lambda_plaus(const LambdaTable& table, const BFData& x, double phi, std::size_t lambda_row) {
  return table.exceed(lambda_row, std::fabs(x.t(phi)));
}

double bf_lambda_plaus(const BFData& x, double phi, double lambda, const MCConfig& mc) {
  x.validate();
  const LambdaTable table(x.n1, x.n2, {lambda}, mc);
  return bf_lambda_plaus(table, x, phi, 0);
}

double bf_marginal_contour(const LambdaTable& table, const BFData& x, double phi) {
  double best = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) best = std::max(best, bf_lambda_plaus(table, x, phi, i));
  return best;
}

ParamPoint interest(const ParamPoint& theta) { return ParamPoint{theta[0] - theta[1]}; }

PlausibilityContour<> fused_contour(const BFData& x, const LambdaTable& table) {
  x.validate();
  // The fiber point gives |T_lambda| = |t(x, mu1 - mu2)| exactly, so the
  // contour is the exceedance of |t| at lambda_theta.
  auto pl = [x, &table](const ParamPoint& th) {
    const double lam = lambda_of(th, x.n1, x.n2);
    if (!std::isfinite(lam)) return 0.0;
    return table.exceed_at(lam, std::fabs(x.t(th[0] - th[1])));
  };
  return PlausibilityContour<>(pl, ParamPoint{x.d() + x.m2, x.m2, x.v1, x.v2});
}

FiberSpec lambda_fiber(const BFData& x, const LambdaTable& table, double phi) {
  std::vector<ParamPoint> pts;
  pts.reserve(table.size());
  for (double lam : table.lambdas())
    pts.push_back(ParamPoint{x.m2 + phi, x.m2, x.n1 * lam, x.n2 * (1.0 - lam)});
  return FiberSpec::points(std::move(pts));
}

}  // namespace imconf::models::behrens_fisher
