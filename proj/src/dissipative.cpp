#include "orlicz/dissipative.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>

#include "orlicz/detail/numeric.hpp"

namespace orlicz {

namespace {

long residue(long i, long q) { return ((i % q) + q) % q; }

std::vector<long> sorted_unique(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<long> validated_W(const std::vector<long>& W) {
  std::vector<long> out = sorted_unique(W);
  if (out.empty())
    throw std::invalid_argument("dissipative: empty W rejected");
  return out;
}

// Closed-form decision for shift transforms: the iterates W + ks are
// pairwise disjoint iff W's residues mod |s| are distinct, and cover the
// integers iff every residue class appears.
DissipativeCertificate shift_certificate(const std::vector<long>& W, long step,
                                         bool coverage_required) {
  DissipativeCertificate cert;
  cert.closed_form = true;
  cert.window = 0;
  if (step == 0) {
    cert.status = Status::Fails;
    cert.witness = W.front();
    cert.note = "identity transform: every iterate equals W";
    return cert;
  }
  const long s = std::labs(step);
  std::set<long> seen;
  for (long a : W) {
    if (!seen.insert(residue(a, s)).second) {
      cert.status = Status::Fails;
      cert.witness = a;
      cert.note = "atom " + std::to_string(a) +
                  " shares a residue class mod " + std::to_string(s) +
                  " with another generator atom";
      return cert;
    }
  }
  if (coverage_required && static_cast<long>(seen.size()) != s) {
    long missing = 0;
    while (seen.count(missing)) ++missing;
    cert.status = Status::Fails;
    cert.witness = missing;
    cert.note = "residue class " + std::to_string(missing) + " mod " +
                std::to_string(s) + " is never covered";
    return cert;
  }
  cert.status = Status::Holds;
  cert.note = coverage_required
                  ? "complete residue system mod the step: iterates tile "
                    "the integers"
                  : "distinct residues mod the step: backward iterates are "
                    "pairwise disjoint";
  return cert;
}

struct Walk {
  std::vector<std::vector<long>> states;  // states[k] = phi^{dir*k}(W)
  long escape = -1;   // index of the first state in the pure-shift regime
  bool faulted = false;
  long fault_atom = 0;
};

// Walks the iterates in one direction until escape (extend-by-shift only)
// or the window is exhausted; Reject walks fault when the orbit leaves the
// table.
Walk walk_orbit(const AtomTransformation& t, std::vector<long> start, int dir,
                long k_window) {
  Walk w;
  const auto window = t.table_window();
  const long s = t.step();
  const long m_eff = dir > 0 ? s : -s;
  const bool extend =
      t.off_window() == AtomTransformation::OffWindow::ExtendByShift;
  auto escaped = [&](const std::vector<long>& st) {
    if (!extend || s == 0) return false;
    const long blk_lo = dir > 0 ? window->first : window->first + s;
    const long blk_hi = dir > 0 ? window->second : window->second + s;
    if (m_eff > 0) return st.front() > blk_hi;
    return st.back() < blk_lo;
  };
  for (long k = 0; k <= k_window; ++k) {
    w.states.push_back(start);
    if (escaped(start)) {
      w.escape = k;
      return w;
    }
    if (k == k_window) break;
    std::vector<long> next;
    next.reserve(start.size());
    for (long a : start) {
      try {
        next.push_back(dir > 0 ? t.forward(a) : t.backward(a));
      } catch (const std::out_of_range&) {
        w.faulted = true;
        w.fault_atom = a;
        return w;
      }
    }
    start = sorted_unique(std::move(next));
  }
  return w;
}

bool in_translates(long x, const std::vector<long>& base, long m) {
  for (long b : base) {
    const long d = x - b;
    if (d % m == 0 && d / m >= 1) return true;
  }
  return false;
}

// Residues of `base` mod |m| must be pairwise distinct for the translate
// family base + j*m to be pairwise disjoint.
std::optional<long> duplicated_residue_atom(const std::vector<long>& base,
                                            long m) {
  const long q = std::labs(m);
  std::set<long> seen;
  for (long b : base)
    if (!seen.insert(residue(b, q)).second) return b;
  return std::nullopt;
}

DissipativeCertificate table_certificate(const AtomTransformation& t,
                                         const std::vector<long>& W,
                                         long k_window,
                                         bool coverage_required,
                                         bool backward_only) {
  DissipativeCertificate cert;
  cert.window = k_window;

  const Walk fwd = backward_only ? Walk{{W}, 0, false, 0}
                                 : walk_orbit(t, W, +1, k_window);
  const Walk bwd = walk_orbit(t, W, -1, k_window);
  if (fwd.faulted || bwd.faulted) {
    cert.status = Status::Undetermined;
    cert.note = "orbit leaves the reject table at atom " +
                std::to_string(fwd.faulted ? fwd.fault_atom : bwd.fault_atom);
    return cert;
  }

  // Pairwise disjointness of every enumerated iterate, tracked per atom.
  std::map<long, long> first_index;  // atom -> signed iterate index
  auto insert_state = [&](const std::vector<long>& st,
                          long index) -> std::optional<long> {
    for (long a : st) {
      const auto [it, fresh] = first_index.emplace(a, index);
      if (!fresh && it->second != index) return a;
    }
    return std::nullopt;
  };
  for (size_t k = 0; k < fwd.states.size(); ++k)
    if (auto hit = insert_state(fwd.states[k], static_cast<long>(k))) {
      cert.status = Status::Fails;
      cert.witness = *hit;
      cert.note = "atom " + std::to_string(*hit) +
                  " appears in two distinct iterates of W";
      return cert;
    }
  for (size_t k = 1; k < bwd.states.size(); ++k)
    if (auto hit = insert_state(bwd.states[k], -static_cast<long>(k))) {
      cert.status = Status::Fails;
      cert.witness = *hit;
      cert.note = "atom " + std::to_string(*hit) +
                  " appears in two distinct iterates of W";
      return cert;
    }

  const long s = t.step();
  const bool fwd_done = backward_only || fwd.escape >= 0;
  if (!fwd_done || bwd.escape < 0) {
    cert.status = Status::Undetermined;
    cert.note = "orbit did not reach the pure-shift regime within the "
                "window; no collision observed";
    return cert;
  }

  // Beyond the walk the iterates are exact translates of the escape states.
  const std::vector<long>& fstar = fwd.states.back();
  const std::vector<long>& bstar = bwd.states.back();
  const long m_f = s;    // forward drift per iterate
  const long m_b = -s;   // backward drift per iterate

  if (!backward_only) {
    if (auto dup = duplicated_residue_atom(fstar, s)) {
      cert.status = Status::Fails;
      cert.witness = *dup;
      cert.note = "forward translates collide: atom " + std::to_string(*dup) +
                  " shares a residue class mod the off-window step";
      return cert;
    }
  }
  if (auto dup = duplicated_residue_atom(bstar, s)) {
    cert.status = Status::Fails;
    cert.witness = *dup;
    cert.note = "backward translates collide: atom " + std::to_string(*dup) +
                " shares a residue class mod the off-window step";
    return cert;
  }

  // Enumerated atoms vs the (virtual) translates beyond the walk.  The walk
  // stops at the escape state, so every j >= 1 translate is non-enumerated
  // and membership alone is a collision.
  for (const auto& [x, idx] : first_index) {
    (void)idx;
    if (!backward_only && in_translates(x, fstar, m_f)) {
      cert.status = Status::Fails;
      cert.witness = x;
      cert.note = "atom " + std::to_string(x) +
                  " recurs in a forward iterate beyond the walk";
      return cert;
    }
    if (in_translates(x, bstar, m_b)) {
      cert.status = Status::Fails;
      cert.witness = x;
      cert.note = "atom " + std::to_string(x) +
                  " recurs in a backward iterate beyond the walk";
      return cert;
    }
  }

  if (coverage_required) {
    long lo = first_index.begin()->first;
    long hi = first_index.rbegin()->first;
    for (long x = lo; x <= hi; ++x) {
      if (first_index.count(x)) continue;
      if (in_translates(x, fstar, m_f)) continue;
      if (in_translates(x, bstar, m_b)) continue;
      cert.status = Status::Fails;
      cert.witness = x;
      cert.note = "atom " + std::to_string(x) +
                  " is covered by no iterate of W";
      return cert;
    }
    // Deep sides: the translate residues must exhaust all classes.
    const long q = std::labs(s);
    auto missing_class = [&](const std::vector<long>& base) {
      std::set<long> seen;
      for (long b : base) seen.insert(residue(b, q));
      for (long c = 0; c < q; ++c)
        if (!seen.count(c)) return std::optional<long>(c);
      return std::optional<long>();
    };
    for (const auto* base : {&fstar, &bstar}) {
      if (auto c = missing_class(*base)) {
        const bool right = (base == &fstar) == (m_f > 0);
        long x = right ? hi + 1 : lo - 1;
        while (residue(x, q) != *c) x += right ? 1 : -1;
        cert.status = Status::Fails;
        cert.witness = x;
        cert.note = "residue class " + std::to_string(*c) +
                    " is never covered beyond the walk";
        return cert;
      }
    }
  }

  cert.status = Status::Holds;
  cert.note = backward_only
                  ? "backward orbit escapes to a pure shift; enumerated and "
                    "translate iterates are pairwise disjoint"
                  : "orbit escapes to pure shifts on both sides; iterates "
                    "tile the integers";
  return cert;
}

}  // namespace

DissipativeCertificate verify_dissipative(const CompositionSystem& system,
                                          const std::vector<long>& W_in,
                                          long k_window) {
  const std::vector<long> W = validated_W(W_in);
  if (k_window < 1)
    throw std::invalid_argument("dissipative: k_window must be >= 1");
  const AtomTransformation& t = system.transform();
  if (t.is_shift()) return shift_certificate(W, t.step(), true);
  return table_certificate(t, W, k_window, true, false);
}

DissipativeCertificate wandering_check(const CompositionSystem& system,
                                       const std::vector<long>& W_in,
                                       long k_window) {
  const std::vector<long> W = validated_W(W_in);
  if (k_window < 1)
    throw std::invalid_argument("dissipative: k_window must be >= 1");
  const AtomTransformation& t = system.transform();
  if (t.is_shift()) return shift_certificate(W, t.step(), false);
  return table_certificate(t, W, k_window, false, true);
}

namespace {

// Subset evidence as bitmasks over the sorted generator; ascending mask
// order keeps the reduction deterministic.
std::vector<unsigned long long> evidence_masks(size_t m,
                                               const SubsetSpec& spec,
                                               bool& exhaustive_out) {
  if (m > 62)
    throw std::invalid_argument("distortion: generator too large to sample");
  const unsigned long long full = (1ull << m) - 1ull;
  std::set<unsigned long long> masks;
  exhaustive_out = spec.exhaustive && m <= 12;
  if (exhaustive_out) {
    for (unsigned long long mask = 1; mask <= full; ++mask) masks.insert(mask);
  } else {
    for (size_t i = 0; i < m; ++i) masks.insert(1ull << i);
    masks.insert(full);
    std::mt19937_64 rng(spec.seed);
    const unsigned long long want = std::min<unsigned long long>(
        full, static_cast<unsigned long long>(std::max<long>(
                  spec.sample_count, static_cast<long>(masks.size()))));
    unsigned long long attempts = 0;
    while (masks.size() < want && attempts < 64ull * want) {
      masks.insert(rng() % full + 1ull);
      ++attempts;
    }
  }
  return {masks.begin(), masks.end()};
}

std::vector<long> mask_subset(const std::vector<long>& W,
                              unsigned long long mask) {
  std::vector<long> out;
  for (size_t i = 0; i < W.size(); ++i)
    if (mask & (1ull << i)) out.push_back(W[i]);
  return out;
}

double log_indicator_norm(const CompositionSystem& system,
                          const std::vector<long>& atoms, long k) {
  std::vector<double> logs;
  logs.reserve(atoms.size());
  for (long a : atoms)
    logs.push_back(
        system.space().log_weight(system.transform().iterate(a, -k)));
  // log N(chi_A) = -log Phi^{-1}(1/mu(A)).
  return -log_inverse_of_reciprocal(system.phi(), detail::logsumexp(logs));
}

// log R_k(F) = log N(chi_{phi^{-k} F}) - log N(chi_F).
double log_R(const CompositionSystem& system, const std::vector<long>& F,
             long k) {
  return log_indicator_norm(system, F, k) - log_indicator_norm(system, F, 0);
}

}  // namespace

DistortionEstimate distortion_constant(const CompositionSystem& system,
                                       const std::vector<long>& W_in,
                                       long k_range,
                                       const SubsetSpec& subsets) {
  const std::vector<long> W = validated_W(W_in);
  if (k_range < 0)
    throw std::invalid_argument("distortion: k_range must be >= 0");
  DistortionEstimate est;
  est.k_range = k_range;
  const auto masks = evidence_masks(W.size(), subsets, est.exhaustive);
  est.evidence_subsets = static_cast<long>(masks.size());

  std::vector<double> logR_W(static_cast<size_t>(2 * k_range + 1));
  for (long k = -k_range; k <= k_range; ++k)
    logR_W[static_cast<size_t>(k + k_range)] = log_R(system, W, k);

  double best = 0.0;
  for (unsigned long long mask : masks) {
    const std::vector<long> F = mask_subset(W, mask);
    for (long k = -k_range; k <= k_range; ++k) {
      const double d = std::abs(log_R(system, F, k) -
                                logR_W[static_cast<size_t>(k + k_range)]);
      if (d > best) {
        best = d;
        est.worst_k = k;
        est.worst_subset = F;
      }
    }
  }
  est.K_hat = std::exp(best);
  est.note = std::string(est.exhaustive ? "exhaustive subsets" : "sampled subsets") +
             "; evidence-only lower bound for any valid distortion constant";
  return est;
}

GeneralizedDistortionEstimate generalized_distortion(
    const CompositionSystem& system, const std::vector<long>& W_in,
    long s_range, long t_range, const SubsetSpec& subsets) {
  const std::vector<long> W = validated_W(W_in);
  if (s_range < 0 || t_range < 0)
    throw std::invalid_argument("distortion: ranges must be >= 0");
  GeneralizedDistortionEstimate est;
  est.s_range = s_range;
  est.t_range = t_range;
  const auto masks = evidence_masks(W.size(), subsets, est.exhaustive);
  est.evidence_subsets = static_cast<long>(masks.size());

  const long K = s_range + t_range;
  std::vector<double> logR_W(static_cast<size_t>(2 * K + 1));
  for (long k = -K; k <= K; ++k)
    logR_W[static_cast<size_t>(k + K)] = log_R(system, W, k);

  double best = 0.0;
  double worst_D = 0.0;  // evidence K_hat on the same grid, for the check
  for (unsigned long long mask : masks) {
    const std::vector<long> F = mask_subset(W, mask);
    std::vector<double> D(static_cast<size_t>(2 * K + 1));
    for (long k = -K; k <= K; ++k) {
      D[static_cast<size_t>(k + K)] =
          log_R(system, F, k) - logR_W[static_cast<size_t>(k + K)];
      worst_D = std::max(worst_D, std::abs(D[static_cast<size_t>(k + K)]));
    }
    for (long s = -s_range; s <= s_range; ++s) {
      for (long t = -t_range; t <= t_range; ++t) {
        const double q = std::abs(D[static_cast<size_t>(t + s + K)] -
                                  D[static_cast<size_t>(s + K)]);
        if (q > best) {
          best = q;
          est.worst_s = s;
          est.worst_t = t;
          est.worst_subset = F;
        }
      }
    }
  }
  est.H_hat = std::exp(best);
  // Each ratio factors through two R_k comparisons on the same grid, so the
  // evidence can never contradict H <= K^2.
  if (best > 2.0 * worst_D + 1e-9)
    throw std::logic_error("generalized distortion: evidence exceeded K^2");
  est.note = std::string(est.exhaustive ? "exhaustive subsets" : "sampled subsets") +
             "; H_hat <= K_hat^2 verified on the shared evidence grid";
  return est;
}

std::vector<double> ratio_sequence(const CompositionSystem& system,
                                   const std::vector<long>& W_in,
                                   long window) {
  const std::vector<long> W = validated_W(W_in);
  if (window < 0)
    throw std::invalid_argument("ratio sequence: window must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(2 * window + 1));
  for (long k = -window; k <= window; ++k)
    out.push_back(std::exp(log_inverse_of_reciprocal(
        system.phi(),
        log_mu_iterate(system.space(), system.transform(), W, k))));
  return out;
}

DissipativeStructure::DissipativeStructure(CompositionSystem system, Spec spec)
    : system_(std::move(system)) {
  W_ = validated_W(spec.W);
  if (spec.k_window < 1)
    throw std::invalid_argument("dissipative: k_window must be >= 1");
  k_window_ = spec.k_window;
  certificate_ = verify_dissipative(system_, W_, k_window_);
  if (certificate_.status == Status::Fails)
    throw PreconditionError("dissipative decomposition fails: " +
                            certificate_.note);
  distortion_ =
      distortion_constant(system_, W_, spec.distortion_k, spec.subsets);
  generalized_ = generalized_distortion(system_, W_, spec.gen_s, spec.gen_t,
                                        spec.subsets);
  mu_right_ = orbit_mu_tail(system_.space(), system_.transform(), W_, +1);
  mu_left_ = orbit_mu_tail(system_.space(), system_.transform(), W_, -1);
  a_right_ = apply_inverse_phi(mu_right_, system_.phi());
  a_left_ = apply_inverse_phi(mu_left_, system_.phi());
}

double DissipativeStructure::log_a(long k) const {
  const auto it = log_a_cache_.find(k);
  if (it != log_a_cache_.end()) return it->second;
  const double v = log_inverse_of_reciprocal(
      system_.phi(),
      log_mu_iterate(system_.space(), system_.transform(), W_, k));
  log_a_cache_.emplace(k, v);
  return v;
}

double DissipativeStructure::a(long k) const { return std::exp(log_a(k)); }

const SequenceTail& DissipativeStructure::mu_tail(int dir) const {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("mu_tail: dir must be +1 or -1");
  return dir > 0 ? mu_right_ : mu_left_;
}

const SequenceTail& DissipativeStructure::a_tail(int dir) const {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("a_tail: dir must be +1 or -1");
  return dir > 0 ? a_right_ : a_left_;
}

}  // namespace orlicz
