#pragma once

#include <string>
#include <vector>

#include "orlicz/measure.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Eventual behavior of a positive sequence v_k as k -> +infinity, derived
// from weight rules or declared-and-verified tail models. `exact` marks
// descriptors backed by a closed-form rule or a trusted tail model (the
// only ones classifiers may turn into Holds/Fails verdicts); everything
// else stays None.
struct SequenceTail {
  enum class Kind {
    None,           // no usable model
    Geometric,      // v_{k+1} = ratio * v_k for all k past some k0
    Periodic,       // v eventually cycles through `cycle` (non-constant)
    LimitZero,      // v -> 0
    LimitInfinity,  // v -> infinity
    LimitPositive,  // v -> limit in (0, infinity)
  };

  Kind kind = Kind::None;
  double ratio = 1.0;
  std::vector<double> cycle;
  double limit = 0.0;
  bool exact = false;
  std::string provenance;

  static SequenceTail none(std::string why = "");
  static SequenceTail geometric(double ratio, std::string from);
  static SequenceTail periodic(std::vector<double> cycle, std::string from);
  static SequenceTail limit_zero(std::string from);
  static SequenceTail limit_infinity(std::string from);
  static SequenceTail limit_positive(double value, std::string from);
};

// Tail of k |-> mu(W + k*m) as k -> +infinity. m = 0 yields the constant
// sequence. Decided from the space's rule (exact everywhere) or from the
// declared tail model on the side the sets drift toward.
SequenceTail mu_sequence_tail(const AtomicMeasureSpace& space, long m,
                              const std::vector<long>& W);

// Tail of n |-> mu(phi^{dir * n}(W)) as n -> +infinity, dir = +1 or -1.
// Shifts reduce to mu_sequence_tail; tables are walked until the orbit
// either cycles (reject tables) or escapes into the pure-shift regime.
SequenceTail orbit_mu_tail(const AtomicMeasureSpace& space,
                           const AtomTransformation& transform,
                           const std::vector<long>& W, int dir,
                           long max_walk = 4096);

// Tail of a_k = Phi^{-1}(1 / mu_k) given the tail of mu_k. Geometric kinds
// survive exactly for the power families (the inverse is a pure power);
// otherwise they degrade to the implied limit statement.
SequenceTail apply_inverse_phi(const SequenceTail& mu_tail,
                               const YoungFunction& phi);

// log(Phi^{-1}(exp(-log_mu))) computed without forming 1/mu; NaN when the
// value is not representable for the family (bounded-data tables).
double log_inverse_of_reciprocal(const YoungFunction& phi, double log_mu);

// log mu(phi^k(W)) via logsumexp of atom log-weights; the transform is
// iterated exactly.
double log_mu_iterate(const AtomicMeasureSpace& space,
                      const AtomTransformation& transform,
                      const std::vector<long>& W, long k);

}  // namespace orlicz
