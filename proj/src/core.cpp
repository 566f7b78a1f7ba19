#include "imconf/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace imconf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sort and merge; drops empty pieces.
std::vector<Interval> normalize(std::vector<Interval> parts) {
  std::vector<Interval> kept;
  for (const auto& iv : parts) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw ParameterError("Region: NaN interval endpoint");
    if (iv.lo > iv.hi) throw ParameterError("Region: interval lower endpoint exceeds upper endpoint");
    if (!iv.empty()) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const auto& iv : kept) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool overlaps = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
      if (overlaps) {
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

double bisect_boundary(const std::function<double(double)>& f, double inside, double outside,
                       double alpha) {
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (f(mid) > alpha)
      inside = mid;
    else
      outside = mid;
  }
  return 0.5 * (inside + outside);
}

}  // namespace

AlphaLevel::AlphaLevel(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0))
    throw ParameterError("AlphaLevel must lie in the open interval (0,1), got " + std::to_string(value));
}

std::string to_string(const ParamPoint& p) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

bool Interval::contains(double v) const {
  if (std::isinf(v)) return false;
  const bool above = lo_closed ? v >= lo : v > lo;
  const bool below = hi_closed ? v <= hi : v < hi;
  return above && below;
}

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed) || std::isinf(lo);
  return false;
}

Region Region::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return intervals({Interval{lo, hi, lo_closed, hi_closed}});
}

Region Region::intervals(std::vector<Interval> parts) { return Region(normalize(std::move(parts))); }

Region Region::grid(std::vector<ParamPoint> points, std::vector<bool> flags) {
  if (points.size() != flags.size()) throw ParameterError("Region::grid: points and flags differ in size");
  return Region(GridSet{std::move(points), std::move(flags)});
}

Region Region::predicate(Predicate pred) {
  if (!pred) throw ParameterError("Region::predicate: empty predicate");
  return Region(std::move(pred));
}

Region::Kind Region::kind() const {
  switch (rep_.index()) {
    case 0:
      return Kind::intervals;
    case 1:
      return Kind::grid;
    default:
      return Kind::predicate;
  }
}

bool Region::contains(const ParamPoint& p) const {
  if (const auto* ivs = std::get_if<std::vector<Interval>>(&rep_)) {
    if (p.dim() != 1) return false;
    for (const auto& iv : *ivs)
      if (iv.contains(p[0])) return true;
    return false;
  }
  if (const auto* g = std::get_if<GridSet>(&rep_)) {
    for (std::size_t i = 0; i < g->points.size(); ++i)
      if (g->flags[i] && g->points[i] == p) return true;
    return false;
  }
  return std::get<Predicate>(rep_)(p);
}

std::optional<bool> Region::is_empty() const {
  if (const auto* ivs = std::get_if<std::vector<Interval>>(&rep_)) return ivs->empty();
  if (const auto* g = std::get_if<GridSet>(&rep_))
    return std::none_of(g->flags.begin(), g->flags.end(), [](bool b) { return b; });
  return std::nullopt;
}

Region Region::complement() const {
  if (const auto* ivs = std::get_if<std::vector<Interval>>(&rep_)) {
    std::vector<Interval> gaps;
    double cursor = -kInf;
    bool cursor_closed = false;  // whether the cursor point belongs to the gap
    for (const auto& iv : *ivs) {
      if (!(iv.lo == -kInf && cursor == -kInf)) {
        Interval gap{cursor, iv.lo, cursor_closed, !iv.lo_closed};
        if (std::isinf(gap.lo)) gap.lo_closed = false;
        if (!gap.empty()) gaps.push_back(gap);
      }
      cursor = iv.hi;
      cursor_closed = !iv.hi_closed;
    }
    if (cursor != kInf) {
      Interval gap{cursor, kInf, cursor_closed && !std::isinf(cursor), false};
      if (!gap.empty()) gaps.push_back(gap);
    }
    return Region(normalize(std::move(gaps)));
  }
  if (const auto* g = std::get_if<GridSet>(&rep_)) {
    GridSet flipped = *g;
    flipped.flags.flip();
    return Region(std::move(flipped));
  }
  Predicate pred = std::get<Predicate>(rep_);
  return Region(Predicate([pred](const ParamPoint& p) { return !pred(p); }));
}

const std::vector<Interval>& Region::interval_list() const {
  if (const auto* ivs = std::get_if<std::vector<Interval>>(&rep_)) return *ivs;
  throw UnsupportedAssertion("Region is not an interval union");
}

const std::vector<ParamPoint>& Region::grid_points() const {
  if (const auto* g = std::get_if<GridSet>(&rep_)) return g->points;
  throw UnsupportedAssertion("Region is not a grid region");
}

const std::vector<bool>& Region::grid_flags() const {
  if (const auto* g = std::get_if<GridSet>(&rep_)) return g->flags;
  throw UnsupportedAssertion("Region is not a grid region");
}

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  for (const auto& a : axes_) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.lo > a.hi)
      throw ParameterError("GridSpec: axis bounds must be finite with lo <= hi");
  }
}

std::size_t GridSpec::size() const {
  if (axes_.empty()) return 0;
  std::size_t s = 1;
  for (const auto& a : axes_) s *= a.n;
  return s;
}

ParamPoint GridSpec::point(std::size_t flat) const {
  std::vector<double> c(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    const std::size_t n = axes_[k].n;
    c[k] = axes_[k].at(flat % n);
    flat /= n;
  }
  return ParamPoint(std::move(c));
}

std::vector<ParamPoint> GridSpec::points() const {
  std::vector<ParamPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

Assertion Assertion::singleton(ParamPoint p) {
  if (p.dim() == 0) throw DegenerateAssertion("singleton assertion needs a point with dim >= 1");
  return Assertion(std::move(p));
}

Assertion Assertion::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return region(Region::interval(lo, hi, lo_closed, hi_closed));
}

Assertion Assertion::region(Region r) {
  if (r.is_empty().value_or(false)) throw DegenerateAssertion("assertion is empty");
  return Assertion(std::move(r));
}

bool Assertion::contains(const ParamPoint& p) const {
  if (is_singleton()) return point() == p;
  return as_region().contains(p);
}

Assertion Assertion::complement() const {
  if (is_singleton()) {
    if (point().dim() != 1)
      throw UnsupportedAssertion("complement of a singleton is only representable in one dimension");
    const double v = point()[0];
    return Assertion(Region::intervals({Interval{-kInf, v, false, false}, Interval{v, kInf, false, false}}));
  }
  return Assertion(as_region().complement());
}

double plausibility(const PlausibilityContour<>& contour, const Assertion& a, const GridSpec& grid) {
  if (a.is_singleton()) return contour(a.point());
  const Region& r = a.as_region();
  const ParamPoint& witness = contour.sup_witness();

  if (r.kind() == Region::Kind::grid) {
    const auto& pts = r.grid_points();
    const auto& flags = r.grid_flags();
    double best = 0.0;  // empty-sup convention
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (flags[i]) best = std::max(best, contour(pts[i]));
    return best;
  }

  if (r.kind() == Region::Kind::intervals) {
    const auto& ivs = r.interval_list();
    if (ivs.empty()) return 0.0;
    if (witness.dim() != 1)
      throw UnsupportedAssertion("interval assertions need a one-dimensional parameter");
    const double mode = witness[0];
    if (contour.shape() == ContourShape::unimodal) {
      double best = 0.0;
      for (const auto& iv : ivs) {
        if (mode >= iv.lo && mode <= iv.hi) return contour(witness);
        const double nearest = mode > iv.hi ? iv.hi : iv.lo;
        best = std::max(best, contour(ParamPoint{nearest}));
      }
      return best;
    }
    bool any = false;
    double best = 0.0;
    auto consider = [&](const ParamPoint& p) {
      any = true;
      best = std::max(best, contour(p));
    };
    for (const auto& iv : ivs) {
      if (std::isfinite(iv.lo)) consider(ParamPoint{iv.lo});
      if (std::isfinite(iv.hi)) consider(ParamPoint{iv.hi});
      if (iv.contains(mode)) consider(witness);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ParamPoint p = grid.point(i);
      if (r.contains(p)) consider(p);
    }
    if (!any) throw DegenerateAssertion("assertion contains no evaluable point of the grid");
    return best;
  }

  bool any = false;
  double best = 0.0;
  if (r.contains(witness)) {
    any = true;
    best = contour(witness);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ParamPoint p = grid.point(i);
    if (r.contains(p)) {
      any = true;
      best = std::max(best, contour(p));
    }
  }
  if (!any) throw DegenerateAssertion("predicate assertion selects no grid point");
  return best;
}

double belief(const PlausibilityContour<>& contour, const Assertion& a, const GridSpec& grid) {
  const Assertion comp = a.complement();
  if (!comp.is_singleton() && comp.as_region().kind() == Region::Kind::predicate) {
    // Predicates have no known emptiness; an empty complement gives belief 1.
    bool any = comp.as_region().contains(contour.sup_witness());
    for (std::size_t i = 0; !any && i < grid.size(); ++i) any = comp.as_region().contains(grid.point(i));
    if (!any) return 1.0;
  }
  return 1.0 - plausibility(contour, comp, grid);
}

std::vector<double> evaluate_on_grid(const PlausibilityContour<>& contour, const GridSpec& grid,
                                     Execution exec) {
  return map_index<double>(grid.size(), exec, [&](std::size_t i) { return contour(grid.point(i)); });
}

Region superlevel_region(const std::function<double(double)>& f, const std::vector<double>& values,
                         const Axis& axis, double alpha) {
  std::vector<Interval> parts;
  const std::size_t n = values.size();
  std::size_t i = 0;
  while (i < n) {
    if (!(values[i] > alpha)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && values[j + 1] > alpha) ++j;
    Interval iv{axis.at(i), axis.at(j), true, true};
    if (i > 0) {
      iv.lo = bisect_boundary(f, axis.at(i), axis.at(i - 1), alpha);
      iv.lo_closed = false;
    }
    if (j + 1 < n) {
      iv.hi = bisect_boundary(f, axis.at(j), axis.at(j + 1), alpha);
      iv.hi_closed = false;
    }
    parts.push_back(iv);
    i = j + 1;
  }
  return Region::intervals(std::move(parts));
}

Region plausibility_region(const PlausibilityContour<>& contour, AlphaLevel alpha, const GridSpec& grid,
                           Execution exec) {
  if (grid.size() == 0) throw DegenerateAssertion("plausibility_region: empty grid");
  const std::vector<double> values = evaluate_on_grid(contour, grid, exec);
  if (grid.dim() == 1) {
    return superlevel_region([&](double t) { return contour(ParamPoint{t}); }, values, grid.axes()[0],
                             alpha.value());
  }
  std::vector<bool> flags(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) flags[i] = values[i] > alpha.value();
  return Region::grid(grid.points(), std::move(flags));
}

FiberSpec FiberSpec::points(std::vector<ParamPoint> pts) {
  FiberSpec f;
  f.points_ = std::move(pts);
  return f;
}

FiberSpec FiberSpec::curve(std::function<ParamPoint(double)> trace, Axis t_axis) {
  FiberSpec f;
  f.trace_ = std::move(trace);
  f.axis_ = t_axis;
  return f;
}

std::vector<ParamPoint> FiberSpec::enumerate() const {
  if (!axis_) return points_;
  std::vector<ParamPoint> out;
  out.reserve(axis_->n);
  for (std::size_t i = 0; i < axis_->n; ++i) out.push_back(trace_(axis_->at(i)));
  return out;
}

double marginal_contour(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                        const ParamPoint& phi, const FiberSpec& fiber) {
  double best = 0.0;
  bool any = false;
  for (const ParamPoint& theta : fiber.enumerate()) {
    const ParamPoint image = phi_map(theta);
    if (image.dim() != phi.dim()) continue;
    bool same = true;
    for (std::size_t k = 0; k < phi.dim() && same; ++k)
      same = std::fabs(image[k] - phi[k]) <= 1e-9 * (1.0 + std::fabs(phi[k]));
    if (!same) continue;
    any = true;
    best = std::max(best, contour(theta));
  }
  if (!any) throw OutOfRange("interest parameter " + to_string(phi) + " has an empty fiber");
  return best;
}

std::vector<double> marginal_on_grid(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                                     const FiberFactory& fiber_of, const GridSpec& phi_grid,
                                     Execution exec) {
  return map_index<double>(phi_grid.size(), exec, [&](std::size_t i) {
    const ParamPoint phi = phi_grid.point(i);
    try {
      return marginal_contour(contour, phi_map, phi, fiber_of(phi));
    } catch (const OutOfRange&) {
      return 0.0;
    }
  });
}

Region marginal_region(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                       const FiberFactory& fiber_of, AlphaLevel alpha, const GridSpec& phi_grid,
                       Execution exec) {
  if (phi_grid.dim() != 1) throw UnsupportedAssertion("marginal_region needs a one-dimensional interest grid");
  const std::vector<double> values = marginal_on_grid(contour, phi_map, fiber_of, phi_grid, exec);
  auto f = [&](double t) {
    const ParamPoint phi{t};
    try {
      return marginal_contour(contour, phi_map, phi, fiber_of(phi));
    } catch (const OutOfRange&) {
      return 0.0;
    }
  };
  return superlevel_region(f, values, phi_grid.axes()[0], alpha.value());
}

}  // namespace imconf
