#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace orlicz::detail {

inline constexpr double kGoldenInv = 0.6180339887498949;

// Bisection for a monotone increasing f on [lo, hi] with f(lo) <= target <=
// f(hi). Returns the right endpoint of the final bracket so the result never
// undershoots the root.
inline double bisect_increasing(const std::function<double(double)>& f,
                                double lo, double hi, double target,
                                double rel_tol, int max_iter = 200) {
  if (!(lo <= hi)) throw std::invalid_argument("bisect: lo > hi");
  for (int i = 0; i < max_iter && (hi - lo) > rel_tol * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

// Golden-section minimization of a unimodal f on [lo, hi].
inline double golden_minimize(const std::function<double(double)>& f,
                              double lo, double hi, int iters = 160) {
  double a = lo, b = hi;
  double x1 = b - kGoldenInv * (b - a);
  double x2 = a + kGoldenInv * (b - a);
  double f1 = f(x1), f2 = f(x2);
  // Ties keep the left interval: when f overflows to +inf on the right of
  // the bracket both probes compare equal, and only the left side can hold
  // finite values (f is finite at lo for every caller here).
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenInv * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenInv * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

inline double golden_maximize(const std::function<double(double)>& f,
                              double lo, double hi, int iters = 160) {
  return golden_minimize([&](double x) { return -f(x); }, lo, hi, iters);
}

// log(sum exp(xs[i])) without overflow; empty input yields -inf.
inline double logsumexp(const std::vector<double>& xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = xs[0];
  for (double x : xs)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

inline bool approx_rel(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace orlicz::detail
