#pragma once

// Data-parallel loop kernels. Every kernel has a serial reference path and an
// OpenMP path selected by Execution; bodies receive only the loop index and
// draw randomness from index-keyed substreams, so both paths produce
// bit-identical results.

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef IMCONF_HAVE_OPENMP
#include <omp.h>
#endif

namespace imconf {

enum class Execution { serial, parallel };

inline int max_threads() {
#ifdef IMCONF_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// out[i] = f(i) for i in [0, n).
template <class T, class F>
std::vector<T> map_index(std::size_t n, Execution exec, F&& f) {
  std::vector<T> out(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    return out;
  }
#ifdef IMCONF_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

/// Number of indices in [0, n) with pred(i) true.
template <class Pred>
std::size_t count_index(std::size_t n, Execution exec, Pred&& pred) {
  const auto count = static_cast<std::int64_t>(n);
  std::int64_t hits = 0;
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) hits += pred(static_cast<std::size_t>(i)) ? 1 : 0;
    return static_cast<std::size_t>(hits);
  }
#ifdef IMCONF_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(+ : hits)
#endif
  for (std::int64_t i = 0; i < count; ++i) hits += pred(static_cast<std::size_t>(i)) ? 1 : 0;
  return static_cast<std::size_t>(hits);
}

/// Per-threshold counts: out[k] = #{i : f(i) <= thresholds[k]}. One value per
/// index is computed and compared against every threshold (shared draws).
template <class F>
std::vector<std::size_t> count_below(std::size_t n, const std::vector<double>& thresholds,
                                     Execution exec, F&& f) {
  const std::vector<double> values = map_index<double>(n, exec, f);
  std::vector<std::size_t> out(thresholds.size(), 0);
  for (double v : values)
    for (std::size_t k = 0; k < thresholds.size(); ++k)
      if (v <= thresholds[k]) ++out[k];
  return out;
}

}  // namespace imconf
