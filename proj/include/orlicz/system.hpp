#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Certificate for the operator-boundedness condition mu(phi^{-1}A) <= c mu(A),
// which for atomic spaces reduces to the per-atom weight-ratio sup. One side
// per operator direction; `inverse` traces C_{phi^{-1}}.
struct BoundednessCertificate {
  enum class Verdict { Bounded, UnboundedEvidence, Undetermined };

  struct Side {
    Verdict verdict = Verdict::Undetermined;
    // Ratio sup: closed form, or the observed window sup when the verdict
    // cannot certify a global constant (then informational only).
    double c = std::numeric_limits<double>::quiet_NaN();
    long worst_atom = 0;
    bool closed_form = false;
    std::string note;
  };

  Side forward;  // C_phi:        sup_a w(phi^{-1}(a)) / w(a)
  Side inverse;  // C_{phi^{-1}}: sup_a w(phi(a)) / w(a)
  long window_lo = 0, window_hi = 0;
};

const char* to_string(BoundednessCertificate::Verdict v);

// Ratio sup over the window (defaulting to the space window), upgraded to a
// global bound when the weight rule or declared tails decide the off-window
// pattern; Unbounded-evidence when ratios grow monotonically across the
// window edge under a declared monotone tail; Undetermined otherwise.
BoundednessCertificate boundedness_check(
    const AtomicMeasureSpace& space, const AtomTransformation& transform,
    std::optional<std::pair<long, long>> window = std::nullopt);

// Measure space + bijective atom map + Young function, with the boundedness
// certificate computed up front so classifiers can consult it.
class CompositionSystem {
 public:
  CompositionSystem(AtomicMeasureSpace space, AtomTransformation transform,
                    YoungFunction phi);

  const AtomicMeasureSpace& space() const { return space_; }
  const AtomTransformation& transform() const { return transform_; }
  const YoungFunction& phi() const { return phi_; }
  const BoundednessCertificate& bounds() const { return bounds_; }

  bool invertible_bounded() const {
    return bounds_.forward.verdict ==
               BoundednessCertificate::Verdict::Bounded &&
           bounds_.inverse.verdict == BoundednessCertificate::Verdict::Bounded;
  }

 private:
  AtomicMeasureSpace space_;
  AtomTransformation transform_;
  YoungFunction phi_;
  BoundednessCertificate bounds_;
};

// C_phi^n f, i.e. i -> f(phi^n(i)); support moves to phi^{-n}(S(f)).
// Throws std::out_of_range naming the atom when the transported support
// lands where no weight is available.
SimpleFunction compose_power(const CompositionSystem& system,
                             const SimpleFunction& f, long n);

// N_Phi(C_phi^n f) for each n in [n_lo, n_hi], via gauge_norm. The exact
// reindexing identity rho(C^n f) = sum_i mu(phi^{-n}(i)) Phi(|f(i)|) is
// evaluated as an internal cross-check.
std::vector<std::pair<long, double>> orbit_gauge_norms(
    const CompositionSystem& system, const SimpleFunction& f, long n_lo,
    long n_hi);

struct ProbeConfig {
  long samples = 64;
  unsigned long long seed = 7;
  long horizon = 40;
  double threshold = 1e3;  // M
  long max_support = 8;
  long window_lo = -16, window_hi = 16;  // support sampling window
  double coef_lo = 1e-2, coef_hi = 1e2;  // log-uniform magnitude range
};

struct ProbeSampleResult {
  SimpleFunction f;  // gauge-normalized sample
  double sup_two_sided = 0.0;  // over evaluable |n| <= horizon (includes 0)
  double sup_forward = 0.0;    // over evaluable 1 <= n <= horizon
  long argmax_two_sided = 0;
  long argmax_forward = 0;
  long eval_lo = 0, eval_hi = 0;  // realized n-range
  bool truncated = false;        // some n in range was not evaluable
  bool exceeds_two_sided = false;
  bool exceeds_forward = false;
};

struct ProbeReport {
  ProbeConfig config;
  std::vector<ProbeSampleResult> samples;
  long count_exceeding = 0;          // two-sided sups above threshold
  long count_exceeding_forward = 0;  // forward sups above threshold
  double min_sup = std::numeric_limits<double>::infinity();
  double min_sup_forward = std::numeric_limits<double>::infinity();
  bool any_truncated = false;
  std::string note;
};

// Samples unit-gauge-norm simple functions (seeded, support <= max_support,
// log-uniform coefficients) and reports orbit-norm sups against the
// threshold. Sampling can only falsify uniformity claims, never prove them;
// the report says so.
ProbeReport expansivity_probe(const CompositionSystem& system,
                              const ProbeConfig& config);

}  // namespace orlicz
