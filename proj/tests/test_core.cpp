#include <doctest.h>

#include <cmath>
#include <limits>

#include "imconf/core.hpp"
#include "imconf/dist.hpp"
#include "imconf/models/binomial.hpp"
#include "imconf/models/normal.hpp"

using namespace imconf;
namespace nm = imconf::models::normal;
namespace bn = imconf::models::binomial;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double oracle(double x, double theta) { return 2.0 * (1.0 - dist::normal_cdf(std::fabs(x - theta))); }

PlausibilityContour<> normal_contour(double x) {
  return family_contour(nm::pivot_family(), x, ContourShape::unimodal);
}

}  // namespace

TEST_CASE("alpha levels are strictly inside (0,1)") {
  CHECK_THROWS_AS(AlphaLevel(0.0), ParameterError);
  CHECK_THROWS_AS(AlphaLevel(1.0), ParameterError);
  CHECK_THROWS_AS(AlphaLevel(std::nan("")), ParameterError);
  CHECK(AlphaLevel(0.3).value() == 0.3);
}

TEST_CASE("contour from a family by bisection") {
  const auto fam = nm::pivot_family();
  CHECK(contour_from_family(fam, 0.0, ParamPoint{0.0}) == 1.0);
  CHECK(contour_from_family(fam, 0.0, ParamPoint{1.96}) == doctest::Approx(oracle(0.0, 1.96)).epsilon(1e-6));
  CHECK(std::fabs(contour_from_family(fam, 0.0, ParamPoint{1.96}) - 0.05) < 1e-3);
  CHECK(contour_from_family(bn::cp_family(), bn::BinomialData{25, 17}, ParamPoint{0.0}) == 0.0);
  CHECK_THROWS_AS(contour_from_family(fam, 0.0, ParamPoint{1.0}, 0.0), ParameterError);
}

TEST_CASE("non-nested family reports the offending pair") {
  ConfidenceFamily<double> bad;
  bad.member = [](const double&, AlphaLevel a, const ParamPoint&) { return a.value() > 0.5; };
  bad.center = [](const double&) { return ParamPoint{0.0}; };
  try {
    contour_from_family(bad, 0.0, ParamPoint{0.0});
    FAIL("expected NestednessViolation");
  } catch (const NestednessViolation& e) {
    CHECK(e.alpha_hi() > e.alpha_lo());
  }
}

TEST_CASE("contours must reach 1") {
  CHECK_THROWS_AS(PlausibilityContour<>([](const ParamPoint&) { return 0.5; }, ParamPoint{0.0}), NonConsonant);
  const PlausibilityContour<> c([](const ParamPoint& t) { return 3.0 - t[0]; }, ParamPoint{0.0});
  CHECK(c(ParamPoint{0.0}) == 1.0);
  CHECK(c(ParamPoint{5.0}) == 0.0);
}

TEST_CASE("plausibility of assertions") {
  const auto c = normal_contour(0.0);
  const GridSpec grid = GridSpec::line(-6, 6);
  CHECK(plausibility(c, Assertion::whole_line(), grid) == 1.0);
  CHECK(plausibility(c, Assertion::singleton(c.sup_witness()), grid) == 1.0);
  CHECK(plausibility(c, Assertion::interval(1.96, kInf, true, false), grid) ==
        doctest::Approx(oracle(0.0, 1.96)).epsilon(1e-5));

  // The general grid path agrees with the unimodal shortcut.
  const PlausibilityContour<> general([](const ParamPoint& t) { return oracle(0.0, t[0]); }, ParamPoint{0.0});
  for (auto [lo, hi] : {std::pair{1.0, 2.0}, std::pair{-3.0, -0.5}, std::pair{-1.0, 4.0}}) {
    const Assertion a = Assertion::interval(lo, hi);
    CHECK(plausibility(general, a, grid) == doctest::Approx(plausibility(c, a, grid)).epsilon(1e-5));
  }
  const Region outside = Region::predicate([](const ParamPoint& t) { return t[0] > 100.0; });
  CHECK_THROWS_AS(plausibility(general, Assertion::region(outside), grid), DegenerateAssertion);
  CHECK_THROWS_AS(Assertion::region(Region::empty()), DegenerateAssertion);
}

TEST_CASE("belief is dual to plausibility") {
  const auto c = normal_contour(0.0);
  const GridSpec grid = GridSpec::line(-6, 6);
  CHECK(belief(c, Assertion::whole_line(), grid) == 1.0);
  CHECK(belief(c, Assertion::interval(-1.96, 1.96, false, false), grid) ==
        doctest::Approx(1.0 - oracle(0.0, 1.96)).epsilon(1e-5));
  for (int i = 0; i < 50; ++i) {
    const double lo = -4.0 + 0.13 * i, hi = lo + 0.05 * (i % 7 + 1);
    const Assertion a = Assertion::interval(lo, hi);
    const double pl = plausibility(c, a, grid);
    const double bel = belief(c, a, grid);
    CHECK(bel <= pl + 1e-12);
    CHECK(bel == doctest::Approx(1.0 - plausibility(c, a.complement(), grid)));
  }
  CHECK_THROWS_AS(Assertion::singleton(ParamPoint{0.0, 1.0}).complement(), UnsupportedAssertion);
}

TEST_CASE("regions: normalization, complement, membership") {
  const Region r = Region::intervals({{2, 3}, {0, 1}, {0.5, 2, true, false}});
  REQUIRE(r.interval_list().size() == 1);
  CHECK(r.interval_list()[0].lo == 0.0);
  CHECK(r.interval_list()[0].hi == 3.0);
  const Region gap = Region::intervals({{0, 1, true, false}, {1, 2, false, true}});
  CHECK(gap.interval_list().size() == 2);
  CHECK_FALSE(gap.contains(ParamPoint{1.0}));
  const Region comp = gap.complement();
  CHECK(comp.contains(ParamPoint{1.0}));
  CHECK(comp.contains(ParamPoint{-5.0}));
  CHECK_FALSE(comp.contains(ParamPoint{0.5}));
  CHECK(Region::interval(-kInf, kInf, false, false).complement().is_empty().value());
  CHECK_FALSE(Region::interval(-kInf, 0, false, true).contains(ParamPoint{-kInf}));
  CHECK_THROWS_AS(Region::interval(1, 0), ParameterError);
  CHECK_FALSE(r.contains(ParamPoint{0.5, 0.5}));
}

TEST_CASE("plausibility region recovers the confidence region") {
  const auto c = normal_contour(0.0);
  const Region r = plausibility_region(c, AlphaLevel(0.05), GridSpec::line(-5, 5));
  REQUIRE(r.interval_list().size() == 1);
  CHECK(r.interval_list()[0].lo == doctest::Approx(-1.959964).epsilon(1e-4));
  CHECK(r.interval_list()[0].hi == doctest::Approx(1.959964).epsilon(1e-4));
  CHECK_FALSE(r.interval_list()[0].lo_closed);

  const Region tiny = plausibility_region(c, AlphaLevel(1.0 - 1e-4), GridSpec::line(-5, 5, 2001));
  for (const auto& iv : tiny.interval_list()) CHECK(iv.hi - iv.lo < 1e-3);

  const auto cp = family_contour(bn::cp_family(), bn::BinomialData{25, 17});
  const Region cr = plausibility_region(cp, AlphaLevel(0.05), GridSpec::line(0, 1));
  const Interval want = bn::cp_interval(25, 17, 0.05);
  REQUIRE(cr.interval_list().size() == 1);
  CHECK(cr.interval_list()[0].lo == doctest::Approx(want.lo).epsilon(1e-4));
  CHECK(cr.interval_list()[0].hi == doctest::Approx(want.hi).epsilon(1e-4));
}

TEST_CASE("family-derived regions are nested and match membership") {
  const auto fam = bn::cp_family();
  for (int x : {0, 5, 17, 25}) {
    const bn::BinomialData d{25, x};
    const auto c = family_contour(fam, d);
    const GridSpec grid = GridSpec::line(0, 1, 257);
    const auto values = evaluate_on_grid(c, grid);
    std::vector<double> alphas = {0.01, 0.05, 0.1, 0.3, 0.6, 0.9};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ParamPoint t = grid.point(i);
      for (std::size_t k = 0; k + 1 < alphas.size(); ++k)
        if (values[i] > alphas[k + 1]) CHECK(values[i] > alphas[k]);
      for (double a : alphas) {
        if (std::fabs(values[i] - a) <= kAlphaTolerance) continue;
        CHECK(fam.member(d, AlphaLevel(a), t) == (values[i] > a));
      }
    }
  }
}

TEST_CASE("grid evaluation: serial and parallel agree") {
  const auto c = family_contour(bn::cp_family(), bn::BinomialData{25, 17});
  const GridSpec grid = GridSpec::line(0, 1, 301);
  CHECK(evaluate_on_grid(c, grid, Execution::serial) == evaluate_on_grid(c, grid, Execution::parallel));
}

TEST_CASE("marginalization") {
  const double x = 0.3;
  const auto c = normal_contour(x);
  const InterestMap id = [](const ParamPoint& t) { return t; };
  for (double t : {-2.0, 0.1, 1.7})
    CHECK(marginal_contour(c, id, ParamPoint{t}, FiberSpec::points({ParamPoint{t}})) == c(ParamPoint{t}));

  const InterestMap absmap = [](const ParamPoint& t) { return ParamPoint{std::fabs(t[0])}; };
  const FiberFactory abs_fiber = [](const ParamPoint& phi) {
    return FiberSpec::points({ParamPoint{phi[0]}, ParamPoint{-phi[0]}});
  };
  CHECK(marginal_contour(c, absmap, ParamPoint{0.5}, abs_fiber(ParamPoint{0.5})) ==
        std::max(c(ParamPoint{0.5}), c(ParamPoint{-0.5})));
  CHECK_THROWS_AS(marginal_contour(c, absmap, ParamPoint{0.5}, FiberSpec::points({ParamPoint{2.0}})), OutOfRange);

  // Identity marginal region equals the plausibility region.
  const GridSpec g = GridSpec::line(-5, 5, 401);
  const Region m = marginal_region(
      c, id, [](const ParamPoint& p) { return FiberSpec::points({p}); }, AlphaLevel(0.05), g);
  const Region p = plausibility_region(c, AlphaLevel(0.05), g);
  CHECK(m.interval_list()[0].lo == doctest::Approx(p.interval_list()[0].lo));
  CHECK(m.interval_list()[0].hi == doctest::Approx(p.interval_list()[0].hi));

  // |theta|: on a symmetric theta grid the marginal region on the phi grid
  // equals the projection of the theta region, point for point.
  const GridSpec phis = GridSpec::line(0, 4, 201);
  const auto mvals = marginal_on_grid(c, absmap, abs_fiber, phis);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double phi = phis.point(i)[0];
    const bool in_projection = c(ParamPoint{phi}) > 0.05 || c(ParamPoint{-phi}) > 0.05;
    CHECK((mvals[i] > 0.05) == in_projection);
  }
  const Region mr = marginal_region(c, absmap, abs_fiber, AlphaLevel(0.05), phis);
  REQUIRE(mr.interval_list().size() == 1);
  CHECK(mr.interval_list()[0].lo == 0.0);
  CHECK(mr.interval_list()[0].hi == doctest::Approx(x + 1.959964).epsilon(1e-5));
}

TEST_CASE("multi-dimensional grids give grid regions") {
  const PlausibilityContour<> c(
      [](const ParamPoint& t) { return std::exp(-(t[0] * t[0] + t[1] * t[1])); }, ParamPoint{0.0, 0.0});
  const GridSpec g({Axis{-2, 2, 21}, Axis{-2, 2, 21}});
  CHECK(g.size() == 441);
  CHECK(g.point(1)[1] == doctest::Approx(-1.8));
  const Region r = plausibility_region(c, AlphaLevel(0.5), g);
  CHECK(r.kind() == Region::Kind::grid);
  CHECK(r.contains(ParamPoint{0.0, 0.0}));
  CHECK_FALSE(r.contains(ParamPoint{2.0, 2.0}));
  const Assertion corner = Assertion::region(Region::predicate([](const ParamPoint& t) { return t[0] >= 1.0; }));
  CHECK(plausibility(c, corner, g) == doctest::Approx(std::exp(-1.0)));
  CHECK(belief(c, corner, g) == 0.0);
}
