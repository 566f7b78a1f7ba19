#include "imconf/validity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace imconf {

AuditReport make_audit_report(const std::vector<ParamPoint>& thetas, const std::vector<double>& alphas,
                              const std::vector<std::vector<double>>& values, const MCConfig& mc) {
  AuditReport r;
  r.grid = thetas;
  r.alphas = alphas;
  r.seed = mc.seed;
  r.reps = mc.reps;
  r.worst_excess = -1.0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto& v = values[k];
    for (double a : alphas) {
      const auto hits = std::count_if(v.begin(), v.end(), [a](double p) { return p <= a; });
      AuditRow row;
      row.theta = thetas[k];
      row.alpha = a;
      row.reps = v.size();
      row.exceedance = v.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(v.size());
      row.se = binomial_se(row.exceedance, row.reps);
      row.flag = row.exceedance > a + 3.0 * std::sqrt(a * (1.0 - a) / static_cast<double>(std::max<std::size_t>(1, row.reps)));
      if (row.flag) ++r.flagged;
      if (row.exceedance - a > r.worst_excess) {
        r.worst_excess = row.exceedance - a;
        r.worst_row = r.rows.size();
      }
      r.rows.push_back(std::move(row));
    }
  }
  if (r.rows.empty()) r.worst_excess = 0.0;
  return r;
}

namespace {

std::string theta_cell(const ParamPoint& p) {
  if (p.dim() == 1) {
    std::ostringstream os;
    os.precision(12);
    os << p[0];
    return os.str();
  }
  std::string s = to_string(p);
  std::replace(s.begin(), s.end(), ',', ';');
  return "\"" + s + "\"";
}

}  // namespace

std::string AuditReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "theta,alpha,exceedance,se,reps,flag\n";
  for (const auto& r : rows)
    os << theta_cell(r.theta) << ',' << r.alpha << ',' << r.exceedance << ',' << r.se << ',' << r.reps << ','
       << (r.flag ? 1 : 0) << '\n';
  return os.str();
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["reps"] = reps;
  j["alphas"] = alphas;
  j["grid"] = nlohmann::json::array();
  for (const auto& t : grid) j["grid"].push_back(t.coords());
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"theta", r.theta.coords()},
                         {"alpha", r.alpha},
                         {"exceedance", r.exceedance},
                         {"se", r.se},
                         {"reps", r.reps},
                         {"flag", r.flag}});
  j["summary"] = {{"flagged", flagged}, {"worst_excess", worst_excess}, {"worst_row", worst_row}};
  return j.dump(2);
}

double ks_uniform(std::vector<double> samples) {
  if (samples.empty()) throw ParameterError("ks_uniform: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = std::clamp(samples[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace imconf
