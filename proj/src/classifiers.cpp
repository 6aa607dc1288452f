#include "orlicz/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace orlicz {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string tail_name(const SequenceTail& t) {
  using K = SequenceTail::Kind;
  switch (t.kind) {
    case K::None:
      return "none";
    case K::Geometric:
      return "geometric(" + fmt(t.ratio) + ")";
    case K::Periodic:
      return "periodic(" + std::to_string(t.cycle.size()) + ")";
    case K::LimitZero:
      return "limit-zero";
    case K::LimitInfinity:
      return "limit-infinity";
    case K::LimitPositive:
      return "limit-positive(" + fmt(t.limit) + ")";
  }
  return "none";
}

// Eventual behaviour of a positive sequence, as far as the descriptor can
// certify it. Only exact descriptors decide anything.
enum class Fate { ToInfinity, ToZero, BoundedPositive, Unknown };

Fate fate_of(const SequenceTail& t, double margin) {
  using K = SequenceTail::Kind;
  if (!t.exact) return Fate::Unknown;
  switch (t.kind) {
    case K::LimitInfinity:
      return Fate::ToInfinity;
    case K::LimitZero:
      return Fate::ToZero;
    case K::LimitPositive:
    case K::Periodic:
      return Fate::BoundedPositive;
    case K::Geometric:
      if (std::abs(t.ratio - 1.0) <= 1e-12) return Fate::BoundedPositive;
      if (t.ratio > 1.0 + margin) return Fate::ToInfinity;
      if (t.ratio < 1.0 - margin) return Fate::ToZero;
      return Fate::Unknown;
    case K::None:
      return Fate::Unknown;
  }
  return Fate::Unknown;
}

bool definitely_bounded(Fate f) {
  return f == Fate::ToZero || f == Fate::BoundedPositive;
}

// ---------------------------------------------------------------------------
// Region calculus for the limit conditions on the normalizing sequence.
//
// A condition lim_n (inf over a k-range of a ratio of a-values) = infinity is
// split into the regions where both indices sit deep in one tail ("pure") and
// the band where the pair straddles the finite middle. Each region gets one
// of three labels; the condition Holds iff every region diverges and Fails
// iff any region stays bounded.
// ---------------------------------------------------------------------------

enum class Region { Diverge, Bounded, Unknown };

// Orientation says which index of the ratio lies further out in the tail:
// OutwardNum when the numerator does, InwardNum when the denominator does.
enum class Orientation { OutwardNum, InwardNum };

Region pure_region(const SequenceTail& t, Orientation o, double margin) {
  using K = SequenceTail::Kind;
  if (!t.exact) return Region::Unknown;
  switch (t.kind) {
    case K::None:
      return Region::Unknown;
    case K::Geometric: {
      if (std::abs(t.ratio - 1.0) <= 1e-12) return Region::Bounded;
      const double rho = o == Orientation::OutwardNum ? t.ratio : 1.0 / t.ratio;
      if (std::abs(rho - 1.0) <= margin) return Region::Unknown;
      return rho > 1.0 ? Region::Diverge : Region::Bounded;
    }
    case K::LimitPositive:
    case K::Periodic:
      return Region::Bounded;
    case K::LimitZero:
      // Were the deep outward ratios eventually all > 1, the chain
      // a_k, a_{k+n}, a_{k+2n}, ... would grow, contradicting the limit.
      return o == Orientation::OutwardNum ? Region::Bounded : Region::Unknown;
    case K::LimitInfinity:
      return o == Orientation::InwardNum ? Region::Bounded : Region::Unknown;
  }
  return Region::Unknown;
}

// Band region where the numerator side samples one tail and the denominator
// side the other. num_fate is the fate of the tail the numerator escapes
// into, den_fate the denominator's.
Region band_region(Fate num_fate, Fate den_fate) {
  if (num_fate == Fate::ToInfinity && den_fate == Fate::ToZero)
    return Region::Diverge;
  if (definitely_bounded(num_fate) || den_fate == Fate::ToInfinity ||
      den_fate == Fate::BoundedPositive)
    return Region::Bounded;
  return Region::Unknown;
}

Status combine_regions(std::initializer_list<Region> regions) {
  bool all_diverge = true;
  for (Region r : regions) {
    if (r == Region::Bounded) return Status::Fails;
    if (r != Region::Diverge) all_diverge = false;
  }
  return all_diverge ? Status::Holds : Status::Undetermined;
}

Status combine_conjunction(Status a, Status b) {
  if (a == Status::Fails || b == Status::Fails) return Status::Fails;
  if (a == Status::Holds && b == Status::Holds) return Status::Holds;
  return Status::Undetermined;
}

// Condition tag "(2.6)": lim_n inf_{k in Z} a_{k+n}/a_k = infinity.
Status forward_tag(const SequenceTail& left, const SequenceTail& right,
                   double margin) {
  return combine_regions(
      {pure_region(right, Orientation::OutwardNum, margin),
       pure_region(left, Orientation::InwardNum, margin),
       band_region(fate_of(right, margin), fate_of(left, margin))});
}

// Condition tag "(2.7)": lim_n inf_{k in Z} a_k/a_{k+n} = infinity.
Status backward_tag(const SequenceTail& left, const SequenceTail& right,
                    double margin) {
  return combine_regions(
      {pure_region(right, Orientation::InwardNum, margin),
       pure_region(left, Orientation::OutwardNum, margin),
       band_region(fate_of(left, margin), fate_of(right, margin))});
}

// Condition tag "(2.8)": the backward condition together with
// lim_n inf_{k <= 0} a_k/a_{k-n} = infinity.
Status mixed_tag(const SequenceTail& left, const SequenceTail& right,
                 double margin) {
  const Fate lf = fate_of(left, margin);
  Region crossing;
  if (lf == Fate::ToZero)
    crossing = Region::Diverge;
  else if (lf == Fate::ToInfinity || lf == Fate::BoundedPositive)
    crossing = Region::Bounded;
  else
    crossing = Region::Unknown;
  const Status second = combine_regions(
      {pure_region(left, Orientation::InwardNum, margin), crossing});
  return combine_conjunction(backward_tag(left, right, margin), second);
}

// ---------------------------------------------------------------------------
// Precondition gating
// ---------------------------------------------------------------------------

std::optional<Verdict> growth_gate(const GrowthCertificate& cert,
                                   const char* which,
                                   const std::string& criterion) {
  if (cert.verdict == Status::Fails)
    throw PreconditionError(std::string(which) + " fails: " + cert.note);
  if (cert.verdict == Status::Undetermined) {
    Verdict v;
    v.criterion = criterion;
    v.status = Status::Undetermined;
    v.note = std::string(which) +
             " certificate Undetermined: criterion not evaluated";
    return v;
  }
  return std::nullopt;
}

void structure_gate(Verdict& v, const DissipativeStructure& structure) {
  if (structure.certificate().status == Status::Undetermined &&
      v.status != Status::Undetermined) {
    v.status = Status::Undetermined;
    if (!v.note.empty()) v.note += "; ";
    v.note += "dissipativity certificate Undetermined";
  }
}

// Unbounded evidence on either side is a hard precondition failure; an
// Undetermined certificate downgrades the verdict instead.
bool boundedness_needs_downgrade(const CompositionSystem& system) {
  const auto& b = system.bounds();
  for (const auto* side : {&b.forward, &b.inverse}) {
    if (side->verdict == BoundednessCertificate::Verdict::UnboundedEvidence)
      throw PreconditionError("composition operator unbounded: " + side->note);
  }
  return b.forward.verdict != BoundednessCertificate::Verdict::Bounded ||
         b.inverse.verdict != BoundednessCertificate::Verdict::Bounded;
}

// Shared mapping for the unboundedness-of-mu criteria: the representable
// descriptors cannot distinguish "unbounded" from "diverging", so the
// positive and uniform variants coincide at this level.
Status mu_divergence_status(const SequenceTail& t, double margin) {
  switch (fate_of(t, margin)) {
    case Fate::ToInfinity:
      return Status::Holds;
    case Fate::ToZero:
    case Fate::BoundedPositive:
      return Status::Fails;
    default:
      return Status::Undetermined;
  }
}

std::vector<double> tail_values(const SequenceTail& t) {
  using K = SequenceTail::Kind;
  switch (t.kind) {
    case K::Geometric:
      return {t.ratio};
    case K::LimitPositive:
      return {t.limit};
    default:
      return {};
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// General classifiers (atom-by-atom over the window)
// ---------------------------------------------------------------------------

Verdict positively_expansive_general(const CompositionSystem& system,
                                     const ClassifierConfig& cfg) {
  Verdict v;
  v.criterion = "Thm 2.7(1)";
  bool all_hold = true;
  for (long a : system.space().window_atoms()) {
    const SequenceTail t =
        orbit_mu_tail(system.space(), system.transform(), {a}, -1);
    const Status s = mu_divergence_status(t, cfg.margin);
    if (s == Status::Fails) {
      v.status = Status::Fails;
      v.witness = a;
      v.witness_kind = "atom";
      v.tail_model = tail_name(t);
      v.values = tail_values(t);
      v.note = "mu(phi^-n({" + std::to_string(a) +
               "})) stays bounded: " + t.provenance;
      return v;
    }
    if (s == Status::Undetermined) {
      all_hold = false;
      if (v.note.empty()) {
        v.tail_model = tail_name(t);
        v.note = "atom " + std::to_string(a) +
                 " has no decisive backward tail: " + t.provenance;
      }
    } else if (v.tail_model.empty()) {
      v.tail_model = tail_name(t);
    }
  }
  v.status = all_hold ? Status::Holds : Status::Undetermined;
  if (v.status == Status::Holds)
    v.note = "mu(phi^-n({a})) diverges for every window atom";
  return v;
}

Verdict expansive_general(const CompositionSystem& system,
                          const ClassifierConfig& cfg) {
  Verdict v;
  v.criterion = "Thm 2.7(2)";
  bool all_hold = true;
  for (long a : system.space().window_atoms()) {
    const SequenceTail back =
        orbit_mu_tail(system.space(), system.transform(), {a}, -1);
    const SequenceTail fwd =
        orbit_mu_tail(system.space(), system.transform(), {a}, +1);
    const Status sb = mu_divergence_status(back, cfg.margin);
    const Status sf = mu_divergence_status(fwd, cfg.margin);
    if (sb == Status::Fails && sf == Status::Fails) {
      v.status = Status::Fails;
      v.witness = a;
      v.witness_kind = "atom";
      v.tail_model =
          "backward: " + tail_name(back) + "; forward: " + tail_name(fwd);
      v.note = "mu stays bounded along both orbit directions at atom " +
               std::to_string(a);
      return v;
    }
    if (sb != Status::Holds && sf != Status::Holds) {
      all_hold = false;
      if (v.note.empty()) {
        v.tail_model =
            "backward: " + tail_name(back) + "; forward: " + tail_name(fwd);
        v.note = "atom " + std::to_string(a) +
                 " has no direction with certified divergence";
      }
    } else if (v.tail_model.empty()) {
      v.tail_model =
          "backward: " + tail_name(back) + "; forward: " + tail_name(fwd);
    }
  }
  v.status = all_hold ? Status::Holds : Status::Undetermined;
  if (v.status == Status::Holds)
    v.note = "every window atom has a divergent orbit direction";
  return v;
}

Verdict uniform_general_heuristic(const CompositionSystem& system,
                                  const std::vector<std::vector<long>>& family,
                                  const ClassifierConfig& cfg,
                                  const DissipativeStructure* structure) {
  if (family.empty())
    throw std::invalid_argument("uniform heuristic: empty family rejected");
  for (const auto& member : family)
    if (member.empty())
      throw std::invalid_argument("uniform heuristic: empty member rejected");
  Verdict v;
  v.criterion = "Thm 2.7(3)";
  for (size_t i = 0; i < family.size(); ++i) {
    const SequenceTail back =
        orbit_mu_tail(system.space(), system.transform(), family[i], -1);
    if (mu_divergence_status(back, cfg.margin) == Status::Fails) {
      const SequenceTail fwd =
          orbit_mu_tail(system.space(), system.transform(), family[i], +1);
      v.status = Status::Fails;
      v.witness = static_cast<long>(i);
      v.witness_kind = "family-index";
      v.tail_model = tail_name(back);
      v.values = tail_values(back);
      v.note = "member " + std::to_string(i) +
               " has bounded mu(phi^-n(F)); forward direction is " +
               tail_name(fwd) +
               ", so the one-sided split may still expand";
      return v;
    }
  }
  if (structure != nullptr) {
    const Delta2Certificate delta2 = check_delta2(system.phi(), LogGrid{});
    Verdict inner =
        uniformly_expansive_dissipative(*structure, delta2, cfg);
    v.status = inner.status;
    v.witness = inner.witness;
    v.witness_kind = inner.witness_kind;
    v.tail_model = inner.tail_model;
    v.values = inner.values;
    const auto slash = inner.criterion.find('/');
    if (slash != std::string::npos) v.criterion += inner.criterion.substr(slash);
    v.note = "delegated to the dissipative uniform criterion: " + inner.note;
    return v;
  }
  v.status = Status::Undetermined;
  v.note = "no member falsifies uniformity, but a finite family cannot "
           "certify it; supply a dissipative structure for a decision";
  return v;
}

// ---------------------------------------------------------------------------
// Dissipative classifiers
// ---------------------------------------------------------------------------

Verdict positively_expansive_dissipative(const DissipativeStructure& structure,
                                         const ClassifierConfig& cfg) {
  Verdict v;
  v.criterion = "Thm 2.8(1)";
  const SequenceTail& t = structure.mu_tail(-1);
  v.status = mu_divergence_status(t, cfg.margin);
  v.tail_model = tail_name(t);
  v.values = tail_values(t);
  switch (v.status) {
    case Status::Holds:
      v.note = "mu(phi^-n(W)) is unbounded";
      break;
    case Status::Fails:
      v.note = "mu(phi^-n(W)) stays bounded: " + t.provenance;
      break;
    default:
      v.note = "backward mu tail undecided: " + t.provenance;
  }
  structure_gate(v, structure);
  return v;
}

Verdict expansive_dissipative(const DissipativeStructure& structure,
                              const ClassifierConfig& cfg) {
  Verdict v;
  v.criterion = "Thm 2.8(2)";
  const SequenceTail& back = structure.mu_tail(-1);
  const SequenceTail& fwd = structure.mu_tail(+1);
  const Status sb = mu_divergence_status(back, cfg.margin);
  const Status sf = mu_divergence_status(fwd, cfg.margin);
  v.tail_model =
      "backward: " + tail_name(back) + "; forward: " + tail_name(fwd);
  if (sb == Status::Holds || sf == Status::Holds) {
    v.status = Status::Holds;
    v.note = std::string("mu is unbounded along the ") +
             (sb == Status::Holds ? "backward" : "forward") +
             " orbit direction";
  } else if (sb == Status::Fails && sf == Status::Fails) {
    v.status = Status::Fails;
    v.note = "mu stays bounded along both orbit directions";
  } else {
    v.status = Status::Undetermined;
    v.note = "neither orbit direction has a decisive mu tail";
  }
  structure_gate(v, structure);
  return v;
}

Verdict uniformly_positively_expansive_dissipative(
    const DissipativeStructure& structure, const Delta2Certificate& delta2,
    const ClassifierConfig& cfg) {
  const std::string criterion = "Thm 2.8(3)";
  if (auto gated = growth_gate(delta2, "Delta2", criterion)) return *gated;
  Verdict v;
  v.criterion = criterion;
  const SequenceTail& t = structure.mu_tail(-1);
  v.status = mu_divergence_status(t, cfg.margin);
  v.tail_model = tail_name(t);
  v.values = tail_values(t);
  switch (v.status) {
    case Status::Holds:
      v.note = "mu(phi^-n(W)) diverges to infinity";
      break;
    case Status::Fails:
      v.note = "mu(phi^-n(W)) does not diverge: " + t.provenance;
      break;
    default:
      v.note = "backward mu tail undecided: " + t.provenance;
  }
  structure_gate(v, structure);
  return v;
}

Verdict uniformly_expansive_dissipative(const DissipativeStructure& structure,
                                        const Delta2Certificate& delta2,
                                        const ClassifierConfig& cfg) {
  const std::string criterion = "Thm 2.8(4)";
  if (auto gated = growth_gate(delta2, "Delta2", criterion)) return *gated;
  const bool bounds_undetermined =
      boundedness_needs_downgrade(structure.system());
  Verdict v;
  v.criterion = criterion;
  const SequenceTail& left = structure.a_tail(-1);
  const SequenceTail& right = structure.a_tail(+1);
  v.tail_model = "left: " + tail_name(left) + "; right: " + tail_name(right);
  if (left.kind == SequenceTail::Kind::Geometric &&
      right.kind == SequenceTail::Kind::Geometric)
    v.values = {left.ratio, right.ratio};

  const Status tags[3] = {forward_tag(left, right, cfg.margin),
                          backward_tag(left, right, cfg.margin),
                          mixed_tag(left, right, cfg.margin)};
  static const char* kTagNames[3] = {"(2.6)", "(2.7)", "(2.8)"};
  int held = -1;
  bool all_fail = true;
  for (int i = 0; i < 3; ++i) {
    if (tags[i] == Status::Holds && held < 0) held = i;
    if (tags[i] != Status::Fails) all_fail = false;
  }
  if (held >= 0) {
    v.status = Status::Holds;
    v.criterion += std::string("/") + kTagNames[held];
    v.note = std::string("condition ") + kTagNames[held] +
             " holds for the normalizing sequence";
  } else if (all_fail) {
    v.status = Status::Fails;
    v.note = "conditions (2.6), (2.7) and (2.8) all fail";
  } else {
    v.status = Status::Undetermined;
    v.note = "no condition among (2.6)-(2.8) is decided";
  }
  if (bounds_undetermined && v.status != Status::Undetermined) {
    v.status = Status::Undetermined;
    v.note += "; boundedness certificate Undetermined";
  }
  structure_gate(v, structure);
  return v;
}

// ---------------------------------------------------------------------------
// Exponent estimates
// ---------------------------------------------------------------------------

namespace {

// Effective geometric rate of an a-tail: Geometric descriptors carry it
// directly, bounded-positive kinds behave like rate 1, monotone limits
// without a rate give nothing.
std::optional<double> tail_rate(const SequenceTail& t) {
  using K = SequenceTail::Kind;
  if (!t.exact) return std::nullopt;
  switch (t.kind) {
    case K::Geometric:
      return t.ratio;
    case K::LimitPositive:
    case K::Periodic:
      return 1.0;
    default:
      return std::nullopt;
  }
}

std::string trend_of(const std::vector<double>& estimates) {
  if (estimates.size() < 4) return "none";
  const size_t begin = estimates.size() - estimates.size() / 4;
  const double tol = 1e-9;
  bool up = true, down = true;
  double lo = estimates[begin], hi = estimates[begin];
  for (size_t i = begin + 1; i < estimates.size(); ++i) {
    if (estimates[i] < estimates[i - 1] - tol) up = false;
    if (estimates[i] > estimates[i - 1] + tol) down = false;
    lo = std::min(lo, estimates[i]);
    hi = std::max(hi, estimates[i]);
  }
  if (hi - lo <= 1e-9 * std::max(1.0, std::abs(hi))) return "flat";
  if (up) return "increasing";
  if (down) return "decreasing";
  return "oscillating";
}

struct LogACache {
  std::vector<double> values;  // log a_k for k in [lo, hi]
  long lo = 0, hi = -1;
  bool truncated_lo = false, truncated_hi = false;
  double at(long k) const { return values[static_cast<size_t>(k - lo)]; }
};

LogACache cache_log_a(const DissipativeStructure& structure, long horizon) {
  LogACache c;
  std::vector<double> neg, pos;
  pos.push_back(structure.log_a(0));
  for (long k = 1; k <= horizon; ++k) {
    try {
      pos.push_back(structure.log_a(k));
    } catch (const std::out_of_range&) {
      c.truncated_hi = true;
      break;
    }
  }
  for (long k = -1; k >= -horizon; --k) {
    try {
      neg.push_back(structure.log_a(k));
    } catch (const std::out_of_range&) {
      c.truncated_lo = true;
      break;
    }
  }
  c.lo = -static_cast<long>(neg.size());
  c.hi = static_cast<long>(pos.size()) - 1;
  c.values.assign(neg.rbegin(), neg.rend());
  c.values.insert(c.values.end(), pos.begin(), pos.end());
  return c;
}

enum class Domain { AllZ, NonNegative, NonPositive };
enum class Extreme { Sup, Inf };
// Fwd pairs (k, k+n), Bwd pairs (k-n, k); the domain constrains k. With
// `negate` the ratio is inverted, giving the decreasing-side quantities.
enum class Pattern { Fwd, Bwd };

ExponentEstimate estimate_quantity(const LogACache& c, long horizon,
                                   Domain dom, Extreme ext, Pattern pat,
                                   bool negate, std::optional<double> closed) {
  ExponentEstimate e;
  e.closed_form = closed;
  switch (dom) {
    case Domain::AllZ:
      e.window_truncated = c.truncated_lo || c.truncated_hi;
      break;
    case Domain::NonNegative:
      e.window_truncated = c.truncated_hi;
      break;
    case Domain::NonPositive:
      e.window_truncated = c.truncated_lo;
      break;
  }
  const long n_cap = std::min(horizon, c.hi - c.lo);
  std::vector<double> estimates;
  estimates.reserve(static_cast<size_t>(std::max<long>(n_cap, 0)));
  for (long n = 1; n <= n_cap; ++n) {
    long k_lo = pat == Pattern::Fwd ? c.lo : c.lo + n;
    long k_hi = pat == Pattern::Fwd ? c.hi - n : c.hi;
    if (dom == Domain::NonNegative) k_lo = std::max(k_lo, 0L);
    if (dom == Domain::NonPositive) k_hi = std::min(k_hi, 0L);
    if (k_lo > k_hi) break;
    double best = ext == Extreme::Sup ? -1e308 : 1e308;
    for (long k = k_lo; k <= k_hi; ++k) {
      double diff = pat == Pattern::Fwd ? c.at(k + n) - c.at(k)
                                        : c.at(k) - c.at(k - n);
      if (negate) diff = -diff;
      best = ext == Extreme::Sup ? std::max(best, diff)
                                 : std::min(best, diff);
    }
    estimates.push_back(std::exp(best / static_cast<double>(n)));
  }
  e.horizon = static_cast<long>(estimates.size());
  if (!estimates.empty()) e.numeric_at_horizon = estimates.back();
  e.trend = trend_of(estimates);
  e.value = closed ? *closed : e.numeric_at_horizon;
  e.series = std::move(estimates);
  return e;
}

}  // namespace

ExponentEstimates exponent_estimates(const DissipativeStructure& structure,
                                     const ClassifierConfig& cfg) {
  if (cfg.horizon < 1)
    throw std::invalid_argument("exponents: horizon must be >= 1");
  const LogACache cache = cache_log_a(structure, cfg.horizon);
  const std::optional<double> rate_left = tail_rate(structure.a_tail(-1));
  const std::optional<double> rate_right = tail_rate(structure.a_tail(+1));

  std::optional<double> cf_sup_Z, cf_inf_Z, cf_sup_N0, cf_inf_neg, cf_bwd_sup,
      cf_dec_inf;
  if (rate_right) {
    cf_sup_N0 = *rate_right;
    cf_dec_inf = 1.0 / *rate_right;
  }
  if (rate_left) {
    cf_inf_neg = 1.0 / *rate_left;
    cf_bwd_sup = 1.0 / *rate_left;
  }
  if (rate_left && rate_right) {
    cf_sup_Z = std::max(*rate_right, 1.0 / *rate_left);
    cf_inf_Z = std::min(*rate_right, 1.0 / *rate_left);
  }

  ExponentEstimates out;
  out.lambda_sup_Z =
      estimate_quantity(cache, cfg.horizon, Domain::AllZ, Extreme::Sup,
                        Pattern::Fwd, false, cf_sup_Z);
  out.lambda_inf_Z =
      estimate_quantity(cache, cfg.horizon, Domain::AllZ, Extreme::Inf,
                        Pattern::Fwd, false, cf_inf_Z);
  out.lambda_sup_N0 =
      estimate_quantity(cache, cfg.horizon, Domain::NonNegative, Extreme::Sup,
                        Pattern::Fwd, false, cf_sup_N0);
  out.lambda_inf_negN0 =
      estimate_quantity(cache, cfg.horizon, Domain::NonPositive, Extreme::Inf,
                        Pattern::Bwd, false, cf_inf_neg);
  out.bwd_sup_negN0 =
      estimate_quantity(cache, cfg.horizon, Domain::NonPositive, Extreme::Sup,
                        Pattern::Bwd, false, cf_bwd_sup);
  out.dec_inf_N0 =
      estimate_quantity(cache, cfg.horizon, Domain::NonNegative, Extreme::Inf,
                        Pattern::Fwd, true, cf_dec_inf);
  return out;
}

// ---------------------------------------------------------------------------
// Stability criteria (sufficient conditions only; never Fails)
// ---------------------------------------------------------------------------

Verdict structural_instability(const DissipativeStructure& structure,
                               const DeltaPrimeCertificate& delta_prime,
                               const ClassifierConfig& cfg) {
  const std::string criterion = "Prop 2.9";
  if (auto gated = growth_gate(delta_prime, "Delta'", criterion))
    return *gated;
  Verdict v;
  v.criterion = criterion;
  const ExponentEstimates est = exponent_estimates(structure, cfg);
  v.values = {est.lambda_sup_N0.value, est.lambda_inf_negN0.value};
  v.tail_model = "left: " + tail_name(structure.a_tail(-1)) +
                 "; right: " + tail_name(structure.a_tail(+1));
  if (est.lambda_sup_N0.closed_form && est.lambda_inf_negN0.closed_form &&
      *est.lambda_sup_N0.closed_form < 1.0 - cfg.margin &&
      *est.lambda_inf_negN0.closed_form > 1.0 + cfg.margin) {
    v.status = Status::Holds;
    v.note = "forward exponent < 1 and backward exponent > 1 in closed form";
  } else {
    v.status = Status::Undetermined;
    v.note = est.lambda_sup_N0.closed_form && est.lambda_inf_negN0.closed_form
                 ? "closed-form exponents do not satisfy the hypotheses; "
                   "the condition is sufficient only"
                 : "no closed-form exponents; numeric trends cannot certify "
                   "a sufficient condition";
  }
  structure_gate(v, structure);
  return v;
}

Verdict strong_structural_stability(const DissipativeStructure& structure,
                                    const DeltaPrimeCertificate& delta_prime,
                                    const ClassifierConfig& cfg) {
  const std::string criterion = "Thm 2.10";
  if (auto gated = growth_gate(delta_prime, "Delta'", criterion))
    return *gated;
  Verdict v;
  v.criterion = criterion;
  const ExponentEstimates est = exponent_estimates(structure, cfg);
  v.values = {est.lambda_sup_Z.value, est.lambda_inf_Z.value,
              est.bwd_sup_negN0.value, est.dec_inf_N0.value};
  v.tail_model = "left: " + tail_name(structure.a_tail(-1)) +
                 "; right: " + tail_name(structure.a_tail(+1));
  const char* tag = nullptr;
  if (est.lambda_sup_Z.closed_form &&
      *est.lambda_sup_Z.closed_form < 1.0 - cfg.margin) {
    tag = "(2.9)";
  } else if (est.lambda_inf_Z.closed_form &&
             *est.lambda_inf_Z.closed_form > 1.0 + cfg.margin) {
    tag = "(2.10)";
  } else if (est.bwd_sup_negN0.closed_form && est.dec_inf_N0.closed_form &&
             *est.bwd_sup_negN0.closed_form < 1.0 - cfg.margin &&
             *est.dec_inf_N0.closed_form > 1.0 + cfg.margin) {
    tag = "(2.11)";
  }
  if (tag != nullptr) {
    v.status = Status::Holds;
    v.criterion += std::string("/") + tag;
    v.note = std::string("sufficient condition ") + tag +
             " holds in closed form";
  } else {
    v.status = Status::Undetermined;
    v.note = "none of (2.9), (2.10), (2.11) is certified; the conditions "
             "are sufficient only";
  }
  structure_gate(v, structure);
  return v;
}

ShadowingReport shadowing_equivalence_report(
    const DissipativeStructure& structure,
    const DeltaPrimeCertificate& delta_prime, const ClassifierConfig& cfg) {
  ShadowingReport rep;
  rep.hypothesis = positively_expansive_dissipative(structure, cfg);
  rep.stability = strong_structural_stability(structure, delta_prime, cfg);
  rep.instability = structural_instability(structure, delta_prime, cfg);
  if (rep.stability.status == Status::Holds &&
      rep.instability.status == Status::Holds)
    throw std::logic_error(
        "shadowing report: stability and instability certified together");
  rep.implications.push_back(
      "Cor 2.11 / final Thm: under positive expansivity, the shadowing "
      "property is equivalent to strong structural stability");
  if (rep.hypothesis.status == Status::Holds) {
    if (rep.stability.status == Status::Holds)
      rep.implications.push_back(
          "shadowing holds: the operator is strongly structurally stable "
          "and positively expansive");
    else if (rep.instability.status == Status::Holds)
      rep.implications.push_back(
          "shadowing fails: the operator is structurally unstable under "
          "positive expansivity");
    else
      rep.implications.push_back(
          "hypothesis holds but neither stability condition is certified; "
          "no shadowing conclusion");
  } else {
    rep.implications.push_back(
        "positive expansivity is not certified; the equivalence does not "
        "apply");
  }
  return rep;
}

}  // namespace orlicz
