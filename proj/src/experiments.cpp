#include "imconf/experiments.hpp"

#include <cmath>

#include "imconf/models/behrens_fisher.hpp"
#include "imconf/models/binomial.hpp"
#include "imconf/models/dkw.hpp"
#include "imconf/models/fieller.hpp"
#include "imconf/models/normal.hpp"
#include "imconf/models/uniform_loc.hpp"

namespace imconf::experiments {

namespace bf = models::behrens_fisher;
namespace bn = models::binomial;
namespace dk = models::dkw;
namespace nm = models::normal;
namespace ul = models::uniform_loc;

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"normal", "binomial", "uniform", "bf", "dkw", "fieller"};
  return names;
}

namespace {

void require_model(const std::string& m) {
  for (const auto& n : model_names())
    if (n == m) return;
  throw ParameterError("unknown model '" + m + "'");
}

}  // namespace

int default_n(const std::string& model) {
  if (model == "binomial") return 25;
  if (model == "uniform") return 10;
  if (model == "dkw") return 100;
  return 0;
}

std::vector<ParamPoint> default_thetas(const std::string& model) {
  require_model(model);
  if (model == "binomial") return bn::sampling_model(25).param_grid_hint;
  if (model == "uniform") return ul::sampling_model(10).param_grid_hint;
  if (model == "bf") return bf::sampling_model(5, 11).param_grid_hint;
  if (model == "dkw") return {ParamPoint{1.0}, ParamPoint{0.5}, ParamPoint{3.0}};  // exponential rates
  if (model == "fieller") return {ParamPoint{1.0, 20.0}};
  return nm::sampling_model().param_grid_hint;
}

AuditReport fused_validity_audit(const AuditSetup& s, Execution exec) {
  require_model(s.model);
  const int n = s.n > 0 ? s.n : default_n(s.model);
  const auto thetas = s.thetas.empty() ? default_thetas(s.model) : s.thetas;

  if (s.model == "normal") {
    return contour_validity_audit<double>(
        nm::sampling_model(), [](const double& x, const ParamPoint& t) { return nm::pivot_contour(x, t[0]); },
        thetas, s.alphas, s.mc, exec);
  }
  if (s.model == "binomial") {
    return contour_validity_audit<bn::BinomialData>(
        bn::sampling_model(n),
        [](const bn::BinomialData& x, const ParamPoint& t) { return bn::im_contour(x.n, x.x, t[0]); }, thetas,
        s.alphas, s.mc, exec);
  }
  if (s.model == "uniform") {
    const auto assoc = ul::association(n);
    const auto rs = ul::random_set();
    return contour_validity_audit<ul::UnifData>(
        ul::sampling_model(n),
        [&](const ul::UnifData& x, const ParamPoint& t) {
          return theta_specific_plaus_on(assoc, rs, x, t, std::vector<ul::UnifAux>{}).value;
        },
        thetas, s.alphas, s.mc, exec);
  }
  if (s.model == "bf") {
    const int n1 = 5, n2 = 11;
    std::vector<std::vector<double>> values;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const ParamPoint& th = thetas[k];
      const bf::LambdaTable table(n1, n2, {bf::lambda_of(th, n1, n2)},
                                  MCConfig{s.table_reps, s.mc.seed, s.mc.stream_id + 0x1000 + k}, exec);
      const auto model = bf::sampling_model(n1, n2);
      values.push_back(map_index<double>(s.mc.reps, exec, [&](std::size_t i) {
        CounterRng rng = cell_stream(s.mc, k, i);
        const bf::BFData x = model.draw(th, rng);
        return table.exceed(0, std::fabs(x.t(th[0] - th[1])));
      }));
    }
    return make_audit_report(thetas, s.alphas, values, s.mc);
  }
  if (s.model == "dkw") {
    const dk::KsNullTable table(static_cast<std::size_t>(n), MCConfig{s.table_reps, s.mc.seed, s.mc.stream_id + 0x2000},
                                exec);
    std::vector<std::vector<double>> values;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const dk::Candidate truth = dk::exponential(thetas[k][0]);
      const auto assoc = dk::association(static_cast<std::size_t>(n));
      values.push_back(map_index<double>(s.mc.reps, exec, [&](std::size_t i) {
        CounterRng rng = cell_stream(s.mc, k, i);
        const dk::EmpiricalSample x = assoc.forward(truth, assoc.aux_sampler(rng));
        return dk::dkw_contour(x, truth.cdf, table).plaus;
      }));
    }
    return make_audit_report(thetas, s.alphas, values, s.mc);
  }
  throw ParameterError("model '" + s.model + "' has no fused IM to audit");
}

Estimate coverage(const std::string& model, int n, const ParamPoint& theta, double alpha, const MCConfig& mc,
                  Execution exec) {
  require_model(model);
  if (n <= 0) n = default_n(model);
  const AlphaLevel a(alpha);
  if (model == "normal") return coverage_probability(nm::sampling_model(), nm::pivot_family(), theta, a, mc, exec);
  if (model == "binomial") return coverage_probability(bn::sampling_model(n), bn::cp_family(), theta, a, mc, exec);
  if (model == "uniform")
    return coverage_probability(ul::sampling_model(n), ul::credible_family(), theta, a, mc, exec);
  if (model == "fieller")
    return coverage_probability(models::fieller::sampling_model(), models::fieller::cd_family(), theta, a, mc, exec);
  if (model == "bf") return coverage_probability(bf::sampling_model(5, 11), bf::hs_family(), theta, a, mc, exec);
  throw ParameterError("model '" + model + "' has no coverage experiment");
}

}  // namespace imconf::experiments
