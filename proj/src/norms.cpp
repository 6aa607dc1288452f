#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "orlicz/detail/numeric.hpp"

namespace orlicz {

double modular(const AtomicMeasureSpace& space, const YoungFunction& phi,
               const SimpleFunction& f) {
  double sum = 0.0;
  for (const auto& [i, v] : f.coefficients())
    sum += space.weight(i) * phi(std::abs(v));
  return sum;
}

GaugeResult gauge_norm_detailed(const AtomicMeasureSpace& space,
                                const YoungFunction& phi,
                                const SimpleFunction& f, double rel_tol) {
  GaugeResult result;
  if (f.empty()) return result;
  const double mu_support = space.set_measure(f.support());
  auto rho_at = [&](double k) { return modular(space, phi, f.scaled(1.0 / k)); };
  // With k = max|f| / Phi^{-1}(1/mu(S)), every term satisfies
  // Phi(|f_i|/k) <= 1/mu(S), so rho <= 1: an analytic upper bracket.
  double hi = f.max_abs() / phi.inverse(1.0 / mu_support);
  // Rounding can leave rho marginally above 1 at the analytic bracket.
  while (rho_at(hi) > 1.0) {
    hi *= 1.0 + 1e-12;
    ++result.iterations;
  }
  double lo = hi;
  while (rho_at(lo) <= 1.0) {
    hi = lo;
    lo *= 0.5;
    ++result.iterations;
    if (lo < 1e-300) {  // only reachable for f = 0, excluded above
      result.value = 0.0;
      return result;
    }
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rho_at(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++result.iterations;
  }
  result.value = hi;
  result.residual = rho_at(hi);
  return result;
}

double gauge_norm(const AtomicMeasureSpace& space, const YoungFunction& phi,
                  const SimpleFunction& f) {
  return gauge_norm_detailed(space, phi, f).value;
}

double indicator_norm(const AtomicMeasureSpace& space, const YoungFunction& phi,
                      const std::vector<long>& F) {
  if (F.empty()) throw std::invalid_argument("indicator_norm: empty atom set");
  return 1.0 / phi.inverse(1.0 / space.set_measure(F));
}

AmemiyaResult orlicz_norm_amemiya_detailed(const AtomicMeasureSpace& space,
                                           const YoungFunction& phi,
                                           const SimpleFunction& f) {
  AmemiyaResult result;
  if (f.empty()) return result;
  auto g = [&](double k) {
    ++result.evaluations;
    return (1.0 + modular(space, phi, f.scaled(k))) / k;
  };
  // Coarse doubling scan brackets the minimum of the unimodal objective;
  // for Phi linear at infinity the objective decreases toward its infimum,
  // so the scan's top end caps the residual error at ~1e-12.
  double best_v = std::numeric_limits<double>::infinity();
  std::vector<double> ks;
  for (double k = 1e-9; k <= 2e12; k *= 2.0) ks.push_back(k);
  size_t best_j = 0;
  for (size_t j = 0; j < ks.size(); ++j) {
    const double v = g(ks[j]);
    if (v < best_v) {
      best_v = v;
      best_j = j;
    }
  }
  const double best_k = ks[best_j];
  const double lo = best_j > 0 ? ks[best_j - 1] : best_k * 0.5;
  const double hi = best_j + 1 < ks.size() ? ks[best_j + 1] : best_k * 2.0;
  const double k_opt = detail::golden_minimize(g, lo, hi, 200);
  const double v_opt = g(k_opt);
  result.k_opt = v_opt < best_v ? k_opt : best_k;
  result.value = std::min(v_opt, best_v);
  return result;
}

double orlicz_norm_amemiya(const AtomicMeasureSpace& space,
                           const YoungFunction& phi, const SimpleFunction& f) {
  return orlicz_norm_amemiya_detailed(space, phi, f).value;
}

namespace {

void simplex_directions(int m, int resolution,
                        const std::function<void(const std::vector<int>&)>& sink) {
  std::vector<int> d(static_cast<size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == m - 1) {
      d[static_cast<size_t>(idx)] = left;
      sink(d);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      d[static_cast<size_t>(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, resolution);
}

int auto_resolution(size_t m) {
  switch (m) {
    case 1:
    case 2: return 64;
    case 3: return 32;
    case 4: return 24;
    case 5: return 12;
    default: return 8;
  }
}

}  // namespace

double orlicz_norm_dual_grid(const AtomicMeasureSpace& space,
                             const ConjugateResult& conj,
                             const SimpleFunction& f, const DualGridSpec& spec) {
  if (f.empty()) return 0.0;
  const size_t m = f.support_size();
  if (m > static_cast<size_t>(spec.max_support))
    throw std::invalid_argument(
        "dual grid: support exceeds the oracle scale; refusing");
  const YoungFunction& psi = conj.psi;
  const auto support = f.support();
  std::vector<double> mu(m), absf(m);
  double mu_min = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < m; ++j) {
    mu[j] = space.weight(support[j]);
    absf[j] = std::abs(f.at(support[j]));
    mu_min = std::min(mu_min, mu[j]);
  }
  // Any feasible g has Psi(g_j) <= 1/mu_j, so g stays within the conjugate's
  // data window iff Psi reaches 1/mu_min there. Beyond the window the table
  // extends linearly and no longer dominates the true conjugate, which would
  // void the lower-bound certificate.
  double y_cap = std::numeric_limits<double>::infinity();
  if (psi.has_bounded_data()) {
    if (psi(psi.data_max()) < 1.0 / mu_min)
      throw std::invalid_argument(
          "dual grid: required dual coefficients exceed the conjugate "
          "table's trusted range; refusing");
    y_cap = psi.data_max();
  }
  auto constraint = [&](const std::vector<int>& d, double s) {
    double total = 0.0;
    for (size_t j = 0; j < m; ++j)
      if (d[j] != 0) total += mu[j] * psi(s * d[j]);
    return total;
  };
  // For direction d, the feasible scalars are [0, s*]; bisection keeps the
  // lower endpoint so every probed g is certified feasible.
  auto best_scale = [&](const std::vector<int>& d) {
    int dmax = 0;
    for (size_t j = 0; j < m; ++j) dmax = std::max(dmax, d[j]);
    if (dmax == 0) return 0.0;
    double hi = y_cap / dmax;
    if (!std::isfinite(hi)) {
      hi = 1.0;
      while (constraint(d, hi) < 1.0) hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (constraint(d, mid) <= 1.0)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };
  auto objective = [&](const std::vector<int>& d) {
    const double s = best_scale(d);
    double total = 0.0;
    for (size_t j = 0; j < m; ++j) total += mu[j] * absf[j] * s * d[j];
    return total;
  };
  const int resolution =
      spec.resolution > 0 ? spec.resolution : auto_resolution(m);
  double best = 0.0;
  std::vector<int> best_d(m, 0);
  simplex_directions(static_cast<int>(m), resolution,
                     [&](const std::vector<int>& d) {
                       const double v = objective(d);
                       if (v > best) {
                         best = v;
                         best_d = d;
                       }
                     });
  // Local refinement: doubling the lattice halves the angular step around
  // the incumbent direction.
  for (int level = 0; level < spec.refine_levels; ++level) {
    for (size_t j = 0; j < m; ++j) best_d[j] *= 2;
    std::vector<int> offset(m, -1), cand(m);
    bool carry = false;
    while (!carry) {
      bool valid = false;
      for (size_t j = 0; j < m; ++j) {
        cand[j] = best_d[j] + offset[j];
        if (cand[j] < 0) cand[j] = 0;
        if (cand[j] > 0) valid = true;
      }
      if (valid) {
        const double v = objective(cand);
        if (v > best) {
          best = v;
          best_d = cand;
        }
      }
      size_t j = 0;
      for (; j < m; ++j) {
        if (offset[j] < 1) {
          ++offset[j];
          break;
        }
        offset[j] = -1;
      }
      carry = j == m;
    }
  }
  return best;
}

double orlicz_norm_dual_grid(const AtomicMeasureSpace& space,
                             const YoungFunction& phi, const SimpleFunction& f,
                             const DualGridSpec& spec) {
  return orlicz_norm_dual_grid(space, conjugate(phi), f, spec);
}

NormReport norm_report(const AtomicMeasureSpace& space, const YoungFunction& phi,
                       const SimpleFunction& f, bool with_dual_grid,
                       const DualGridSpec& spec) {
  NormReport report;
  const GaugeResult g = gauge_norm_detailed(space, phi, f);
  report.gauge = g.value;
  report.bisection_iterations = g.iterations;
  report.residual = g.residual;
  report.amemiya = orlicz_norm_amemiya(space, phi, f);
  if (with_dual_grid && f.support_size() <= static_cast<size_t>(spec.max_support))
    report.dual_grid = orlicz_norm_dual_grid(space, phi, f, spec);
  return report;
}

ConvergenceReport modular_convergence_check(
    const AtomicMeasureSpace& space, const YoungFunction& phi,
    const std::vector<SimpleFunction>& fs, const SimpleFunction& f,
    const Delta2Certificate& delta2, double tol) {
  ConvergenceReport report;
  const double rho_f = modular(space, phi, f);
  for (const auto& fn : fs) {
    report.norm_deviations.push_back(gauge_norm(space, phi, fn.minus(f)));
    report.modular_deviations.push_back(
        std::abs(modular(space, phi, fn) - rho_f));
    report.pointwise_deviations.push_back(fn.minus(f).max_abs());
  }
  if (fs.empty()) {
    report.note = "empty sequence: nothing to check";
    return report;
  }
  const double scale = 1.0 + std::abs(rho_f) + gauge_norm(space, phi, f);
  auto converges = [&](const std::vector<double>& xs) {
    return xs.back() <= tol * scale;
  };
  report.norms_converge = converges(report.norm_deviations);
  report.modulars_converge = converges(report.modular_deviations);
  report.pointwise_converge = converges(report.pointwise_deviations);
  report.forward_consistent =
      !(report.norms_converge && !report.modulars_converge);
  if (delta2.verdict == Status::Holds) {
    report.converse_checked = true;
    report.converse_consistent =
        !(report.modulars_converge && report.pointwise_converge &&
          !report.norms_converge);
  } else {
    report.note = "Delta2 not certified: converse direction skipped";
  }
  return report;
}

}  // namespace orlicz
