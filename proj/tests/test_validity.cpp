#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "imconf/dist.hpp"
#include "imconf/experiments.hpp"
#include "imconf/models/binomial.hpp"
#include "imconf/models/normal.hpp"
#include "imconf/validity.hpp"

using namespace imconf;
namespace bn = imconf::models::binomial;
namespace nm = imconf::models::normal;

TEST_CASE("ks_uniform") {
  CHECK(ks_uniform({0.5}) == doctest::Approx(0.5));
  CHECK(ks_uniform({0.25, 0.75}) == doctest::Approx(0.25));
  CHECK(ks_uniform({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_uniform({}), ParameterError);
  std::vector<double> u;
  for (int i = 0; i < 1000; ++i) u.push_back((i + 0.5) / 1000.0);
  CHECK(ks_uniform(u) == doctest::Approx(0.0005));
}

TEST_CASE("coverage of confidence families") {
  const auto e = coverage_probability(nm::sampling_model(), nm::pivot_family(), ParamPoint{0.3}, AlphaLevel(0.05),
                                      MCConfig{20000, 1, 0});
  CHECK(std::fabs(e.value - 0.95) <= 3.0 * e.se + 1e-9);

  for (double t : {0.1, 0.37, 0.5, 0.8}) {
    const auto c = coverage_probability(bn::sampling_model(25), bn::cp_family(), ParamPoint{t}, AlphaLevel(0.05),
                                        MCConfig{10000, 2, 0});
    CHECK(c.value >= 0.95 - 3.0 * c.se);
  }

  const auto f = coverage_function(nm::sampling_model(), nm::pivot_family(), {ParamPoint{-1}, ParamPoint{2}},
                                   AlphaLevel(0.1), MCConfig{4000, 3, 0});
  REQUIRE(f.cells.size() == 2);
  REQUIRE(f.infimum.size() == 2);
  for (const auto& c : f.cells) CHECK(std::fabs(c.coverage.value - 0.9) <= 3.5 * c.coverage.se);
}

TEST_CASE("contour audits") {
  const std::vector<ParamPoint> thetas = {ParamPoint{-1}, ParamPoint{0}, ParamPoint{2.5}};
  const std::vector<double> alphas = {0.05, 0.1, 0.25, 0.5};
  const MCConfig mc{10000, 5, 0};
  std::function<double(const double&, const ParamPoint&)> pivot = [](const double& x, const ParamPoint& t) {
    return nm::pivot_contour(x, t[0]);
  };
  const AuditReport r = contour_validity_audit(nm::sampling_model(), pivot, thetas, alphas, mc);
  CHECK(r.valid());
  CHECK(r.rows.size() == thetas.size() * alphas.size());
  for (std::size_t k = 1; k < alphas.size(); ++k) CHECK(r.rows[k].exceedance >= r.rows[k - 1].exceedance);

  // pl at the true value is uniform under the pivot.
  std::vector<double> v;
  for (std::size_t i = 0; i < mc.reps; ++i) {
    CounterRng rng = cell_stream(mc, 0, i);
    v.push_back(pivot(nm::sampling_model().draw(thetas[0], rng), thetas[0]));
  }
  CHECK(ks_uniform(v) <= 1.63 / std::sqrt(static_cast<double>(mc.reps)));

  std::function<double(const double&, const ParamPoint&)> one = [](const double&, const ParamPoint&) { return 1.0; };
  const AuditReport c = contour_validity_audit(nm::sampling_model(), one, thetas, alphas, mc);
  for (const auto& row : c.rows) CHECK(row.exceedance == 0.0);
  CHECK(c.worst_excess < 0.0);

  // An invalid contour is flagged.
  std::function<double(const double&, const ParamPoint&)> tight = [](const double& x, const ParamPoint& t) {
    return std::pow(nm::pivot_contour(x, t[0]), 3.0);
  };
  const AuditReport bad = contour_validity_audit(nm::sampling_model(), tight, thetas, alphas, mc);
  CHECK_FALSE(bad.valid());
  CHECK(bad.rows[bad.worst_row].flag);

  std::function<double(const bn::BinomialData&, const ParamPoint&)> im = [](const bn::BinomialData& x,
                                                                            const ParamPoint& t) {
    return bn::im_contour(x.n, x.x, t[0]);
  };
  std::vector<ParamPoint> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(ParamPoint{k / 10.0});
  const AuditReport b = contour_validity_audit(bn::sampling_model(25), im, grid, alphas, mc);
  CHECK(b.valid());

  const AuditReport s = contour_validity_audit(bn::sampling_model(25), im, grid, alphas, mc, Execution::serial);
  const AuditReport p = contour_validity_audit(bn::sampling_model(25), im, grid, alphas, mc, Execution::parallel);
  CHECK(s.to_csv() == p.to_csv());
}

TEST_CASE("assertion audits") {
  const MCConfig mc{5000, 9, 0};
  const std::vector<double> alphas = {0.05, 0.25, 0.5};
  const auto model = nm::sampling_model();

  std::function<double(const double&)> all = [](const double&) { return 1.0; };
  const AuditReport w = assertion_validity_audit(model, all, Assertion::whole_line(), {ParamPoint{0}}, alphas, mc);
  CHECK(w.valid());

  // A = (-inf, 0]: pl_x(A) = pivot contour at min(x, 0).
  const Assertion left = Assertion::interval(-std::numeric_limits<double>::infinity(), 0.0, false, true);
  std::function<double(const double&)> pl_left = [](const double& x) { return x <= 0 ? 1.0 : nm::pivot_contour(x, 0.0); };
  const AuditReport l =
      assertion_validity_audit(model, pl_left, left, {ParamPoint{0}, ParamPoint{-0.5}, ParamPoint{-2}}, alphas, mc);
  CHECK(l.valid());
  // At the boundary theta = 0 only the upper tail counts.
  CHECK(l.rows[0].exceedance == doctest::Approx(0.025).epsilon(0.3));
  CHECK_THROWS_AS(assertion_validity_audit(model, pl_left, left, {ParamPoint{1}}, alphas, mc), ParameterError);

  // A = {theta : |theta| = phi0}: marginal of the pivot contour is the max
  // over the fiber {phi0, -phi0}.
  const double phi0 = 0.8;
  const Assertion fib = Assertion::region(Region::grid({ParamPoint{phi0}, ParamPoint{-phi0}}, {true, true}));
  std::function<double(const double&)> pl_fib = [phi0](const double& x) {
    return std::max(nm::pivot_contour(x, phi0), nm::pivot_contour(x, -phi0));
  };
  CHECK(assertion_validity_audit(model, pl_fib, fib, {ParamPoint{phi0}, ParamPoint{-phi0}}, alphas, mc).valid());
}

TEST_CASE("report serialization") {
  const std::vector<ParamPoint> thetas = {ParamPoint{0.1}, ParamPoint{1, 2}};
  const AuditReport r = make_audit_report(thetas, {0.1, 0.5}, {{0.05, 0.2, 0.7, 0.9}, {0.6, 0.6, 0.6, 0.6}},
                                          MCConfig{4, 3, 0});
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("theta,alpha,exceedance,se,reps,flag\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.find("0.1,0.1,0.25,") != std::string::npos);
  CHECK(r.rows[1].exceedance == 0.5);
  CHECK(r.rows[2].exceedance == 0.0);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["seed"] == 3);
  CHECK(j["rows"].size() == 4);
  CHECK(j["grid"][1][1] == 2.0);
  CHECK(j["summary"].contains("worst_excess"));
}

TEST_CASE("experiment audits") {
  experiments::AuditSetup s;
  s.model = "normal";
  s.n = 1;
  s.thetas = {ParamPoint{0.0}};
  s.alphas = {0.1, 0.5};
  s.mc = MCConfig{3000, 1, 0};
  CHECK(experiments::fused_validity_audit(s).valid());
  s.model = "unknown";
  CHECK_THROWS_AS(experiments::fused_validity_audit(s), ParameterError);
}
