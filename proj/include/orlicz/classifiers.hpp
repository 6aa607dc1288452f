#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/common.hpp"
#include "orlicz/dissipative.hpp"
#include "orlicz/sequences.hpp"
#include "orlicz/system.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct ClassifierConfig {
  long horizon = 256;    // numeric horizon for exponent estimates
  double margin = 1e-6;  // strict-inequality margin for closed-form ratios
};

// One classification outcome. `criterion` is the stable report tag (e.g.
// "Thm 2.8(1)", "(2.6)", "Prop 2.9"); `values` carries the criterion's
// decisive numerics in a fixed documented order; `tail_model` names the
// tail descriptor the decision rested on.
struct Verdict {
  std::string criterion;
  Status status = Status::Undetermined;
  std::optional<long> witness;
  std::string witness_kind;
  std::string tail_model;
  std::vector<double> values;
  std::string note;
};

// A single limit quantity of the normalizing sequence a_k. `value` repeats
// the closed form when one exists and the horizon numeric otherwise; the
// trend is a last-quartile monotonicity fit of the per-n estimates.
struct ExponentEstimate {
  double value = 1.0;
  double numeric_at_horizon = 1.0;
  std::optional<double> closed_form;
  long horizon = 0;
  std::string trend = "none";
  bool window_truncated = false;
  std::vector<double> series;  // per-n estimates, n = 1..horizon
};

struct ExponentEstimates {
  ExponentEstimate lambda_sup_Z;      // limsup_n sup_{k in Z} (a_{k+n}/a_k)^{1/n}
  ExponentEstimate lambda_inf_Z;      // liminf_n inf_{k in Z} (a_{k+n}/a_k)^{1/n}
  ExponentEstimate lambda_sup_N0;     // limsup_n sup_{k>=0} (a_{k+n}/a_k)^{1/n}
  ExponentEstimate lambda_inf_negN0;  // liminf_n inf_{k<=0} (a_k/a_{k-n})^{1/n}
  ExponentEstimate bwd_sup_negN0;     // limsup_n sup_{k<=0} (a_k/a_{k-n})^{1/n}
  ExponentEstimate dec_inf_N0;        // liminf_n inf_{k>=0} (a_k/a_{k+n})^{1/n}
};

// General (non-dissipative) classifiers. Work atom-by-atom over the window:
// positive expansivity reduces to divergence of n -> mu(phi^{-n}(a)) for
// every window atom, expansivity to divergence in at least one direction.
Verdict positively_expansive_general(const CompositionSystem& system,
                                     const ClassifierConfig& cfg = {});
Verdict expansive_general(const CompositionSystem& system,
                          const ClassifierConfig& cfg = {});

// Uniform expansivity over a finite family of probe sets. Falsifies when a
// member's forward-divergence side is definitively bounded; delegates to the
// dissipative criteria when a structure is supplied; otherwise reports that
// uniformity has no finite certificate.
Verdict uniform_general_heuristic(const CompositionSystem& system,
                                  const std::vector<std::vector<long>>& family,
                                  const ClassifierConfig& cfg = {},
                                  const DissipativeStructure* structure = nullptr);

// Dissipative criteria keyed to the normalizing sequence a_k.
Verdict positively_expansive_dissipative(const DissipativeStructure& structure,
                                         const ClassifierConfig& cfg = {});
Verdict expansive_dissipative(const DissipativeStructure& structure,
                              const ClassifierConfig& cfg = {});

// Uniform variants require a Delta2 certificate: Fails -> PreconditionError,
// Undetermined -> Undetermined verdict without evaluating the criterion.
Verdict uniformly_positively_expansive_dissipative(
    const DissipativeStructure& structure, const Delta2Certificate& delta2,
    const ClassifierConfig& cfg = {});
Verdict uniformly_expansive_dissipative(const DissipativeStructure& structure,
                                        const Delta2Certificate& delta2,
                                        const ClassifierConfig& cfg = {});

ExponentEstimates exponent_estimates(const DissipativeStructure& structure,
                                     const ClassifierConfig& cfg = {});

// Sufficient conditions only: these two never report Fails. Both require a
// Delta' certificate with the same policy as the uniform classifiers.
Verdict structural_instability(const DissipativeStructure& structure,
                               const DeltaPrimeCertificate& delta_prime,
                               const ClassifierConfig& cfg = {});
Verdict strong_structural_stability(const DissipativeStructure& structure,
                                    const DeltaPrimeCertificate& delta_prime,
                                    const ClassifierConfig& cfg = {});

// Joint report for the shadowing/stability equivalence (final theorem):
// the hypothesis verdict, both sufficient-condition verdicts, and the
// implications the equivalence licenses. Throws std::logic_error if the
// stability and instability conditions both claim to hold.
struct ShadowingReport {
  Verdict hypothesis;
  Verdict stability;
  Verdict instability;
  std::vector<std::string> implications;
};

ShadowingReport shadowing_equivalence_report(
    const DissipativeStructure& structure,
    const DeltaPrimeCertificate& delta_prime, const ClassifierConfig& cfg = {});

}  // namespace orlicz
