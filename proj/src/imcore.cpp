#include "imconf/imcore.hpp"

#include <cmath>

namespace imconf {

namespace {

// Golden-section maximization of f on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-12 * (1.0 + std::fabs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

PlausibilityContour<> fuse(std::function<double(const ParamPoint&)> pl, const GridSpec& grid,
                           const std::vector<ParamPoint>& hints, ContourShape shape, Execution exec,
                           std::function<double(const ParamPoint&)> search) {
  if (!search) search = pl;
  ParamPoint best;
  double best_value = -1.0;
  for (const auto& h : hints) {
    const double v = pl(h);
    if (v > best_value) {
      best_value = v;
      best = h;
    }
  }
  if (best_value < 1.0 - kSupTolerance && grid.size() > 0) {
    const std::vector<double> values =
        map_index<double>(grid.size(), exec, [&](std::size_t i) { return pl(grid.point(i)); });
    std::size_t arg = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] > values[arg]) arg = i;
    if (values[arg] > best_value) {
      best_value = values[arg];
      best = grid.point(arg);
    }
    if (best_value < 1.0 - kSupTolerance && grid.dim() == 1 && grid.axes()[0].n > 1) {
      const Axis& ax = grid.axes()[0];
      const double a = ax.at(arg == 0 ? 0 : arg - 1);
      const double b = ax.at(std::min(arg + 1, ax.n - 1));
      auto [t, v] = golden_max([&](double s) { return search(ParamPoint{s}); }, a, b);
      v = pl(ParamPoint{t});
      if (v > best_value) {
        best_value = v;
        best = ParamPoint{t};
      }
    }
  }
  if (best_value < 1.0 - kSupTolerance)
    throw NonConsonant("fused contour reaches only " + std::to_string(best_value) +
                       " on the evaluation grid; the theta-specific plausibilities do not normalize to 1");
  return PlausibilityContour<>(std::move(pl), best, shape);
}

}  // namespace imconf
