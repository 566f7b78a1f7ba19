#include "imconf/models/dkw.hpp"

#include <algorithm>
#include <cmath>

#include "imconf/validity.hpp"

namespace imconf::models::dkw {

EmpiricalSample::EmpiricalSample(std::vector<double> values) : x_(std::move(values)) {
  if (x_.empty()) throw ParameterError("EmpiricalSample: need at least one observation");
  for (double v : x_)
    if (!std::isfinite(v)) throw ParameterError("EmpiricalSample: non-finite observation");
  std::sort(x_.begin(), x_.end());
}

double EmpiricalSample::ecdf(double t) const {
  return static_cast<double>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) / static_cast<double>(x_.size());
}

double EmpiricalSample::ecdf_left(double t) const {
  return static_cast<double>(std::lower_bound(x_.begin(), x_.end(), t) - x_.begin()) / static_cast<double>(x_.size());
}

CandidateCdf CandidateCdf::continuous(std::function<double(double)> f) {
  CandidateCdf c;
  c.value = f;
  c.left = std::move(f);
  return c;
}

CandidateCdf CandidateCdf::step(std::vector<double> at, std::vector<double> levels) {
  if (at.size() != levels.size()) throw ParameterError("CandidateCdf::step: size mismatch");
  if (!std::is_sorted(at.begin(), at.end())) throw ParameterError("CandidateCdf::step: jump points must be sorted");
  CandidateCdf c;
  c.value = [at, levels](double t) {
    const auto k = std::upper_bound(at.begin(), at.end(), t) - at.begin();
    return k == 0 ? 0.0 : levels[k - 1];
  };
  c.left = [at, levels](double t) {
    const auto k = std::lower_bound(at.begin(), at.end(), t) - at.begin();
    return k == 0 ? 0.0 : levels[k - 1];
  };
  c.jumps = std::move(at);
  return c;
}

double dkw_delta(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("dkw_delta: alpha must lie in (0,1)");
  if (n == 0) throw ParameterError("dkw_delta: n must be >= 1");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

Band dkw_band(const EmpiricalSample& x, double alpha) {
  const double delta = dkw_delta(x.size(), alpha);
  std::vector<double> at;
  std::vector<double> lo, hi;
  const auto& v = x.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    at.push_back(v[i]);
    const double level = static_cast<double>(i + 1) / static_cast<double>(v.size());
    lo.push_back(std::max(level - delta, 0.0));
    hi.push_back(std::min(level + delta, 1.0));
  }
  Band b;
  b.delta = delta;
  b.lower = CandidateCdf::step(at, lo);
  // The upper band starts at delta below the first observation.
  std::vector<double> at_hi = at, hi_levels = hi;
  const double floor_level = std::min(delta, 1.0);
  CandidateCdf up = CandidateCdf::step(at_hi, hi_levels);
  b.upper.value = [up, floor_level](double t) { return std::max(up.value(t), floor_level); };
  b.upper.left = [up, floor_level](double t) { return std::max(up.left(t), floor_level); };
  b.upper.jumps = at;
  return b;
}

double sup_norm(const EmpiricalSample& x, const CandidateCdf& f) {
  std::vector<double> pts = x.values();
  pts.insert(pts.end(), f.jumps.begin(), f.jumps.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double s = 0.0;
  double prev = 0.0;
  for (double t : pts) {
    const double fl = f.left(t), fv = f.value(t);
    if (fl < -1e-12 || fv > 1.0 + 1e-12 || fl > fv + 1e-12 || fl < prev - 1e-12)
      throw ParameterError("sup_norm: candidate is not a distribution function on the evaluation points");
    prev = fv;
    s = std::max({s, std::fabs(x.ecdf_left(t) - fl), std::fabs(x.ecdf(t) - fv)});
  }
  // Beyond the last point F_n = 1; F is assumed to tend to 1.
  return s;
}

double alpha_index(const EmpiricalSample& x, const CandidateCdf& f) {
  const double s = sup_norm(x, f);
  return std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(x.size()) * s * s));
}

namespace {

double ks_of_sorted(const std::vector<double>& u) {
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    d = std::max({d, static_cast<double>(i + 1) / n - u[i], u[i] - static_cast<double>(i) / n});
  return d;
}

}  // namespace

KsNullTable::KsNullTable(std::size_t n, const MCConfig& mc, Execution exec) : n_(n) {
  mc.validate();
  if (n == 0) throw ParameterError("KsNullTable: n must be >= 1");
  sorted_ = map_index<double>(mc.reps, exec, [&](std::size_t r) {
    CounterRng rng = substream(mc, r);
    std::vector<double> u(n);
    for (auto& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());
    return ks_of_sorted(u);
  });
  std::sort(sorted_.begin(), sorted_.end());
}

double KsNullTable::exceed(double s) const {
  const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), s);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

DkwResult dkw_contour(const EmpiricalSample& x, const CandidateCdf& f, const KsNullTable& table) {
  if (table.n() != x.size()) throw ParameterError("dkw_contour: null table built for a different n");
  DkwResult r;
  r.sup_norm = sup_norm(x, f);
  r.alpha_index = std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(x.size()) * r.sup_norm * r.sup_norm));
  // P{D_n > s}: equals 1 - P_U(S_{alpha(x,F)}) whenever the index is below 1,
  // and keeps the contour continuous up to 1 at F = F_n.
  r.plaus = table.exceed(r.sup_norm);
  r.se = binomial_se(r.plaus, table.reps());
  return r;
}

EmpiricalSample synthetic_sample(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0x646b77);
  std::vector<double> v(n);
  for (auto& x : v) x = -std::log(rng.uniform());
  return EmpiricalSample(std::move(v));
}

Association<EmpiricalSample, Uniforms, Candidate> association(std::size_t n) {
  Association<EmpiricalSample, Uniforms, Candidate> a;
  a.forward = [](const Candidate& f, const Uniforms& u) {
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = f.quantile(u[i]);
    return EmpiricalSample(std::move(x));
  };
  a.fiber = [](const EmpiricalSample& x, const Candidate& f) {
    Uniforms u;
    for (double v : x.values()) {
      const double p = f.cdf.value(v);
      if (!(p > 0.0 && p < 1.0)) return std::vector<Uniforms>{};
      u.push_back(p);
    }
    return std::vector<Uniforms>{u};
  };
  a.focal = [](const EmpiricalSample& x, const Uniforms& u) {
    return std::function<bool(const Candidate&)>([x, u](const Candidate& f) {
      const auto& v = x.values();
      for (std::size_t i = 0; i < v.size(); ++i)
        if (std::fabs(f.cdf.value(v[i]) - u[i]) > 1e-9) return false;
      return true;
    });
  };
  a.aux_sampler = [n](CounterRng& rng) {
    Uniforms u(n);
    for (auto& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());
    return u;
  };
  return a;
}

RandomSetFamily<Uniforms, Candidate> random_set(std::size_t n) {
  RandomSetFamily<Uniforms, Candidate> rs;
  rs.support_member = [n](const Uniforms& u, AlphaLevel a, const Candidate&) {
    return ks_of_sorted(u) <= dkw_delta(n, a.value());
  };
  return rs;
}

Candidate exponential(double rate) {
  if (!(rate > 0.0)) throw ParameterError("exponential: rate must be > 0");
  Candidate c;
  c.cdf = CandidateCdf::continuous([rate](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-rate * t); });
  c.quantile = [rate](double p) { return -std::log1p(-p) / rate; };
  return c;
}

}  // namespace imconf::models::dkw
