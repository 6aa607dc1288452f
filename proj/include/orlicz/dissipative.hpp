#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/common.hpp"
#include "orlicz/sequences.hpp"
#include "orlicz/system.hpp"

namespace orlicz {

// Disjointness/coverage certificate for the decomposition of the index set
// into the iterates phi^k(W). Shift transforms are decided in closed form
// over all of Z via residue classes; table transforms are decided by orbit
// walking where conclusive and left Undetermined otherwise.
struct DissipativeCertificate {
  Status status = Status::Undetermined;
  std::optional<long> witness;  // colliding or uncovered atom
  long window = 0;              // enumeration window actually used
  bool closed_form = false;
  std::string note;
};

DissipativeCertificate verify_dissipative(const CompositionSystem& system,
                                          const std::vector<long>& W,
                                          long k_window);

// Wandering-set check: pairwise disjointness of the backward iterates only
// (no coverage requirement).
DissipativeCertificate wandering_check(const CompositionSystem& system,
                                       const std::vector<long>& W,
                                       long k_window);

// Evidence strategy over the subsets of W. Exhaustive enumeration is capped
// at |W| <= 12; beyond that a seeded sample is drawn (singletons and W are
// always included either way).
struct SubsetSpec {
  bool exhaustive = true;
  long sample_count = 256;
  unsigned long long seed = 3;
};

// Distortion evidence: K_hat is the max over evaluated (k, F) of
// max(R_k(F)/R_k(W), R_k(W)/R_k(F)) with R_k(F) = N(C^k chi_F)/N(chi_F).
// A certified LOWER bound on any valid distortion constant; only evidence,
// never a proof of boundedness.
struct DistortionEstimate {
  double K_hat = 1.0;
  bool exhaustive = false;
  long evidence_subsets = 0;
  long k_range = 0;
  long worst_k = 0;
  std::vector<long> worst_subset;
  std::string note;
};

DistortionEstimate distortion_constant(const CompositionSystem& system,
                                       const std::vector<long>& W,
                                       long k_range, const SubsetSpec& subsets);

// Two-parameter distortion evidence: H_hat covers the ratios
// [N(C^{t+s} chi_F)/N(C^s chi_F)] / [N(C^{t+s} chi_W)/N(C^s chi_W)]
// over the (s, t) grid. Internally cross-checked against the K_hat built
// from the same evidence: each ratio factors through two R_k comparisons,
// so H_hat <= K_hat^2 must hold on the evidence exactly.
struct GeneralizedDistortionEstimate {
  double H_hat = 1.0;
  bool exhaustive = false;
  long evidence_subsets = 0;
  long s_range = 0, t_range = 0;
  long worst_s = 0, worst_t = 0;
  std::vector<long> worst_subset;
  std::string note;
};

GeneralizedDistortionEstimate generalized_distortion(
    const CompositionSystem& system, const std::vector<long>& W, long s_range,
    long t_range, const SubsetSpec& subsets);

// a_k = Phi^{-1}(1 / mu(phi^k(W))) for k in [-window, window], computed in
// log space (exact closed forms for the rule families flow through the
// closed-form log weights).
std::vector<double> ratio_sequence(const CompositionSystem& system,
                                   const std::vector<long>& W, long window);

// Generator W + verification window + distortion evidence + the cached
// ratio sequence a_k, with tail descriptors for both directions. Throws
// PreconditionError when verify_dissipative definitively Fails; an
// Undetermined certificate is carried and surfaces in classifier notes.
class DissipativeStructure {
 public:
  struct Spec {
    std::vector<long> W;
    long k_window = 64;
    SubsetSpec subsets;
    long distortion_k = 16;
    long gen_s = 6, gen_t = 6;
  };

  DissipativeStructure(CompositionSystem system, Spec spec);

  const CompositionSystem& system() const { return system_; }
  const std::vector<long>& W() const { return W_; }
  long k_window() const { return k_window_; }
  const DissipativeCertificate& certificate() const { return certificate_; }
  const DistortionEstimate& distortion() const { return distortion_; }
  const GeneralizedDistortionEstimate& generalized() const {
    return generalized_;
  }

  // log a_k / a_k, cached; k beyond the verification window is computed on
  // demand and may throw std::out_of_range where weights are unavailable.
  double log_a(long k) const;
  double a(long k) const;

  // Tail of mu(phi^{k}(W)) as k -> +dir*infinity, and the induced tail of
  // a_k in the same direction.
  const SequenceTail& mu_tail(int dir) const;
  const SequenceTail& a_tail(int dir) const;

 private:
  CompositionSystem system_;
  std::vector<long> W_;
  long k_window_ = 0;
  DissipativeCertificate certificate_;
  DistortionEstimate distortion_;
  GeneralizedDistortionEstimate generalized_;
  SequenceTail mu_right_, mu_left_, a_right_, a_left_;
  mutable std::map<long, double> log_a_cache_;
};

}  // namespace orlicz
