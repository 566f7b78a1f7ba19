#pragma once

// Contour algebra: plausibility contours from nested confidence families,
// their consonant extension to assertions, plausibility regions and
// marginalization by optimization over fibers.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "imconf/errors.hpp"
#include "imconf/parallel.hpp"

namespace imconf {

/// Bisection tolerance on alpha for family-derived contours.
inline constexpr double kAlphaTolerance = 1e-6;
inline constexpr int kBisectionCap = 60;
/// A contour must reach 1 - kSupTolerance at its witness.
inline constexpr double kSupTolerance = 1e-8;
inline constexpr std::size_t kDefaultGridPoints = 512;

/// Significance level strictly inside (0,1).
class AlphaLevel {
 public:
  explicit AlphaLevel(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

/// A point of the parameter space (or of an interest-parameter space).
class ParamPoint {
 public:
  ParamPoint() = default;
  ParamPoint(std::initializer_list<double> coords) : coords_(coords) {}
  explicit ParamPoint(std::vector<double> coords) : coords_(std::move(coords)) {}
  static ParamPoint scalar(double v) { return ParamPoint{v}; }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  bool operator==(const ParamPoint&) const = default;

 private:
  std::vector<double> coords_;
};

std::string to_string(const ParamPoint& p);

/// Real interval; endpoints may be infinite (infinite ends are never members).
struct Interval {
  double lo;
  double hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double v) const;
  bool empty() const;
};

/// A subset of the parameter space, as a sorted union of disjoint intervals
/// (one-dimensional spaces), a finite grid with membership flags, or a
/// predicate. Membership is total.
class Region {
 public:
  enum class Kind { intervals, grid, predicate };
  using Predicate = std::function<bool(const ParamPoint&)>;

  static Region empty() { return Region(std::vector<Interval>{}); }
  static Region interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  static Region intervals(std::vector<Interval> parts);
  static Region grid(std::vector<ParamPoint> points, std::vector<bool> flags);
  static Region predicate(Predicate pred);

  Kind kind() const;
  bool contains(const ParamPoint& p) const;
  /// Known emptiness; nullopt for predicates.
  std::optional<bool> is_empty() const;
  Region complement() const;

  const std::vector<Interval>& interval_list() const;
  const std::vector<ParamPoint>& grid_points() const;
  const std::vector<bool>& grid_flags() const;

 private:
  struct GridSet {
    std::vector<ParamPoint> points;
    std::vector<bool> flags;
  };
  explicit Region(std::vector<Interval> normalized) : rep_(std::move(normalized)) {}
  explicit Region(GridSet g) : rep_(std::move(g)) {}
  explicit Region(Predicate p) : rep_(std::move(p)) {}

  std::variant<std::vector<Interval>, GridSet, Predicate> rep_;
};

/// One axis of an evaluation grid: n equally spaced points on [lo, hi].
struct Axis {
  double lo;
  double hi;
  std::size_t n = kDefaultGridPoints;

  double at(std::size_t i) const {
    if (n <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

/// Cartesian-product grid; flat index runs fastest over the last axis.
class GridSpec {
 public:
  explicit GridSpec(std::vector<Axis> axes);
  static GridSpec line(double lo, double hi, std::size_t n = kDefaultGridPoints) {
    return GridSpec({Axis{lo, hi, n}});
  }

  std::size_t size() const;
  std::size_t dim() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  ParamPoint point(std::size_t flat) const;
  std::vector<ParamPoint> points() const;

 private:
  std::vector<Axis> axes_;
};

/// Alpha-indexed nested family of confidence regions C_alpha(x), given by a
/// membership predicate and a point center(x) lying in every region.
template <class Data>
struct ConfidenceFamily {
  std::function<bool(const Data&, AlphaLevel, const ParamPoint&)> member;
  std::function<ParamPoint(const Data&)> center;
  std::size_t param_dim = 1;
};

/// Shape hint used by plausibility() to avoid grid searches.
enum class ContourShape { general, unimodal };

/// Point function theta -> [0,1] whose supremum, 1, is attained at the
/// witness. Evaluation must be thread-safe; grid kernels call it
/// concurrently.
template <class Param = ParamPoint>
class PlausibilityContour {
 public:
  using Fn = std::function<double(const Param&)>;

  PlausibilityContour(Fn eval, Param sup_witness, ContourShape shape = ContourShape::general)
      : eval_(std::move(eval)), witness_(std::move(sup_witness)), shape_(shape) {
    const double top = (*this)(witness_);
    if (top < 1.0 - kSupTolerance)
      throw NonConsonant("plausibility contour peaks at " + std::to_string(top) +
                         " < 1 at its witness; sup over the parameter space must equal 1");
  }

  double operator()(const Param& p) const { return std::clamp(eval_(p), 0.0, 1.0); }
  const Param& sup_witness() const { return witness_; }
  ContourShape shape() const { return shape_; }

 private:
  Fn eval_;
  Param witness_;
  ContourShape shape_;
};

/// An assertion A about the parameter: a singleton or a Region.
class Assertion {
 public:
  static Assertion singleton(ParamPoint p);
  static Assertion interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  static Assertion whole_line() { return interval(-kInf, kInf, false, false); }
  /// Rejects regions that are known to be empty.
  static Assertion region(Region r);

  bool is_singleton() const { return std::holds_alternative<ParamPoint>(rep_); }
  const ParamPoint& point() const { return std::get<ParamPoint>(rep_); }
  const Region& as_region() const { return std::get<Region>(rep_); }
  bool contains(const ParamPoint& p) const;

  /// The complement within the parameter space; may be empty. Singletons
  /// are only complementable in one dimension.
  Assertion complement() const;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  explicit Assertion(ParamPoint p) : rep_(std::move(p)) {}
  explicit Assertion(Region r) : rep_(std::move(r)) {}
  std::variant<ParamPoint, Region> rep_;
};

/// p_x(theta) = sup{alpha : theta in C_alpha(x)} by bisection on alpha.
/// Returns 0 when theta is outside C_tol(x) and 1 when it is inside
/// C_{1-tol}(x). Throws NestednessViolation when the bracket ends disagree
/// with nestedness.
template <class Data>
double contour_from_family(const ConfidenceFamily<Data>& family, const Data& x,
                           const ParamPoint& theta, double tol = kAlphaTolerance) {
  if (!(tol > 0.0 && tol < 0.5)) throw ParameterError("contour_from_family: tol must lie in (0, 0.5)");
  double lo = tol, hi = 1.0 - tol;
  const bool in_lo = family.member(x, AlphaLevel(lo), theta);
  const bool in_hi = family.member(x, AlphaLevel(hi), theta);
  if (!in_lo && in_hi)
    throw NestednessViolation(hi, lo,
                              "confidence family not nested at theta=" + to_string(theta) +
                                  ": member at alpha=" + std::to_string(hi) +
                                  " but not at alpha=" + std::to_string(lo));
  if (!in_lo) return 0.0;
  if (in_hi) return 1.0;
  for (int it = 0; it < kBisectionCap && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (family.member(x, AlphaLevel(mid), theta))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// The contour of a family at fixed data, witnessed by the family's center.
template <class Data>
PlausibilityContour<> family_contour(ConfidenceFamily<Data> family, Data x,
                                     ContourShape shape = ContourShape::general,
                                     double tol = kAlphaTolerance) {
  ParamPoint witness = family.center(x);
  return PlausibilityContour<>(
      [family = std::move(family), x = std::move(x), tol](const ParamPoint& theta) {
        return contour_from_family(family, x, theta, tol);
      },
      std::move(witness), shape);
}

/// pl(A) = sup over A of the contour. Singletons are evaluated exactly;
/// intervals use the unimodal hint (sup is 1 if the witness is inside, else
/// the contour at the nearest endpoint) or else maximize over grid points
/// inside A, finite endpoints and the witness. Contours are treated as
/// continuous at finite interval endpoints. Known-empty assertions give 0.
double plausibility(const PlausibilityContour<>& contour, const Assertion& a, const GridSpec& grid);

/// bel(A) = 1 - pl(complement of A).
double belief(const PlausibilityContour<>& contour, const Assertion& a, const GridSpec& grid);

/// Contour values at every grid point (parallel kernel).
std::vector<double> evaluate_on_grid(const PlausibilityContour<>& contour, const GridSpec& grid,
                                     Execution exec = Execution::parallel);

/// {theta : contour(theta) > alpha}. One-dimensional grids give an interval
/// union whose interior boundaries are refined by bisection between grid
/// points; higher dimensions give a grid region.
Region plausibility_region(const PlausibilityContour<>& contour, AlphaLevel alpha,
                           const GridSpec& grid, Execution exec = Execution::parallel);

/// Builds {t : f(t) > alpha} on a 1-d grid from precomputed values, refining
/// interior boundaries of f by bisection.
Region superlevel_region(const std::function<double(double)>& f, const std::vector<double>& values,
                         const Axis& axis, double alpha);

/// The set {theta : phi(theta) = phi0}, enumerated explicitly or traced by a
/// curve t -> theta over a grid of t.
class FiberSpec {
 public:
  static FiberSpec points(std::vector<ParamPoint> pts);
  static FiberSpec curve(std::function<ParamPoint(double)> trace, Axis t_axis);
  std::vector<ParamPoint> enumerate() const;

 private:
  std::vector<ParamPoint> points_;
  std::function<ParamPoint(double)> trace_;
  std::optional<Axis> axis_;
};

using InterestMap = std::function<ParamPoint(const ParamPoint&)>;
using FiberFactory = std::function<FiberSpec(const ParamPoint&)>;

/// sup of the contour over the fiber points that map to phi. Throws
/// OutOfRange when none do.
double marginal_contour(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                        const ParamPoint& phi, const FiberSpec& fiber);

/// Marginal contour at every point of a 1-d interest grid; values at phi
/// with an empty fiber are 0.
std::vector<double> marginal_on_grid(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                                     const FiberFactory& fiber_of, const GridSpec& phi_grid,
                                     Execution exec = Execution::parallel);

/// {phi : marginal contour > alpha} over a 1-d interest grid.
Region marginal_region(const PlausibilityContour<>& contour, const InterestMap& phi_map,
                       const FiberFactory& fiber_of, AlphaLevel alpha, const GridSpec& phi_grid,
                       Execution exec = Execution::parallel);

}  // namespace imconf
