#include "orlicz/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace orlicz {

const char* to_string(BoundednessCertificate::Verdict v) {
  switch (v) {
    case BoundednessCertificate::Verdict::Bounded:
      return "Bounded";
    case BoundednessCertificate::Verdict::UnboundedEvidence:
      return "UnboundedEvidence";
    default:
      return "Undetermined";
  }
}

namespace {

using Verdict = BoundednessCertificate::Verdict;
using Side = BoundednessCertificate::Side;

long tail_span(const TailModel& t) {
  if (t.kind == TailModel::Kind::Geometric) return t.stride;
  if (t.kind == TailModel::Kind::Periodic) return t.period;
  return 1;
}

// Global ratio sup sup_a w(a + s_pre)/w(a) for the closed-form weight rules.
std::optional<Side> shift_rule_bound(const AtomicMeasureSpace& space,
                                     long s_pre) {
  Side side;
  side.closed_form = true;
  side.verdict = Verdict::Bounded;
  if (s_pre == 0) {
    side.c = 1.0;
    side.worst_atom = 0;
    side.note = "identity preimage";
    return side;
  }
  if (space.rule() == AtomicMeasureSpace::Rule::Geometric) {
    side.c = std::pow(space.rule_param(), static_cast<double>(s_pre));
    side.worst_atom = 0;  // the ratio is the same at every atom
    side.note = "geometric rule: constant step ratio";
    return side;
  }
  if (space.rule() == AtomicMeasureSpace::Rule::TwoSidedExp) {
    const double b = space.rule_param();
    const double up = std::pow(b, static_cast<double>(std::labs(s_pre)));
    side.c = std::max(up, 1.0 / up);
    // |a + s| - |a| attains |s| at a = 0 and -|s| at a = -s.
    side.worst_atom = b >= 1.0 ? 0 : -s_pre;
    side.note = "two-sided rule: |a+s|-|a| spans [-|s|, |s|]";
    return side;
  }
  return std::nullopt;
}

// Observed ratio sup over atoms of [lo, hi] with both weights available.
struct WindowSup {
  double c = std::numeric_limits<double>::quiet_NaN();
  long worst = 0;
  bool any = false;
};

WindowSup observed_sup(const AtomicMeasureSpace& space, long lo, long hi,
                       const std::function<long(long)>& pre) {
  WindowSup out;
  for (long a = lo; a <= hi; ++a) {
    const long p = pre(a);
    if (!space.weight_available(a) || !space.weight_available(p)) continue;
    const double r = std::exp(space.log_weight(p) - space.log_weight(a));
    if (!out.any || r > out.c) {
      out.c = r;
      out.worst = a;
    }
    out.any = true;
  }
  return out;
}

// Pure shift preimage on a table space. Extrapolating tails on both sides
// make the deep-tail ratio pattern periodic, so a window sup extended past
// both declared tails is the global sup. A declared monotone tail with
// ratios growing outward across the window is reported as unbounded
// evidence; anything else stays Undetermined.
Side table_space_shift_side(const AtomicMeasureSpace& space, long s_pre,
                            long wlo, long whi) {
  Side side;
  auto pre = [s_pre](long a) { return a + s_pre; };
  const TailModel& tl = space.tail_left();
  const TailModel& tr = space.tail_right();

  if (tl.extrapolates() && tr.extrapolates()) {
    const long E =
        2 * std::max(tail_span(tl), tail_span(tr)) + std::labs(s_pre) + 2;
    const WindowSup sup = observed_sup(space, std::min(wlo, space.lo()) - E,
                                       std::max(whi, space.hi()) + E, pre);
    side.verdict = Verdict::Bounded;
    side.c = sup.c;
    side.worst_atom = sup.worst;
    side.note = "window sup extended past both declared tails; the deep-tail "
                "ratio pattern repeats";
    return side;
  }

  const WindowSup sup = observed_sup(space, wlo, whi, pre);
  side.c = sup.c;
  side.worst_atom = sup.any ? sup.worst : wlo;

  // Evidence scan: ratios on the outer quarter toward a declared monotone
  // tail, read outward.
  const long n = space.hi() - space.lo() + 1;
  const long seg = std::max<long>(3, n / 4);
  auto grows_outward = [&](bool left_side) {
    const long a0 = left_side ? space.lo() : space.hi() - seg + 1;
    const long b0 = left_side ? space.lo() + seg - 1 : space.hi();
    double first = std::numeric_limits<double>::quiet_NaN();
    double last = first;
    double prev_outer = std::numeric_limits<double>::infinity();
    // Walk from the inner end of the segment toward the edge.
    for (long k = 0; k < b0 - a0 + 1; ++k) {
      const long a = left_side ? b0 - k : a0 + k;
      const long p = pre(a);
      if (!space.in_window(a) || !space.in_window(p)) continue;
      const double r =
          std::exp(space.log_weight(p) - space.log_weight(a));
      if (std::isnan(first)) {
        first = r;
        prev_outer = r;
      } else {
        if (r < prev_outer * (1.0 - 1e-12)) return false;  // not monotone
        prev_outer = r;
      }
      last = r;
    }
    return !std::isnan(first) && last > first * (1.0 + 1e-9);
  };

  const bool left_monotone = tl.kind == TailModel::Kind::MonotoneIncreasing ||
                             tl.kind == TailModel::Kind::MonotoneDecreasing;
  const bool right_monotone = tr.kind == TailModel::Kind::MonotoneIncreasing ||
                              tr.kind == TailModel::Kind::MonotoneDecreasing;
  if (left_monotone && !tl.extrapolates() && grows_outward(true)) {
    side.verdict = Verdict::UnboundedEvidence;
    side.worst_atom = space.lo();
    side.note = "preimage ratios grow outward across the left window edge "
                "under the declared monotone tail";
    return side;
  }
  if (right_monotone && !tr.extrapolates() && grows_outward(false)) {
    side.verdict = Verdict::UnboundedEvidence;
    side.worst_atom = space.hi();
    side.note = "preimage ratios grow outward across the right window edge "
                "under the declared monotone tail";
    return side;
  }

  side.verdict = Verdict::Undetermined;
  side.note = std::string("no extrapolating tail model on the ") +
              (!tl.extrapolates() && !tr.extrapolates()
                   ? "left or right"
                   : (!tl.extrapolates() ? "left" : "right")) +
              " side; window sup is informational only";
  return side;
}

Side reject_table_side(const AtomicMeasureSpace& space,
                       const AtomTransformation& t, bool forward_op) {
  Side side;
  const auto window = t.table_window();
  const long klo = window->first, khi = window->second;
  for (long a = klo; a <= khi; ++a) {
    if (!space.weight_available(a)) {
      side.verdict = Verdict::Undetermined;
      side.note = "weight unavailable at atom " + std::to_string(a) +
                  " inside the reject window";
      return side;
    }
  }
  auto pre = [&](long a) { return forward_op ? t.backward(a) : t.forward(a); };
  const WindowSup sup = observed_sup(space, klo, khi, pre);
  side.verdict = Verdict::Bounded;
  side.c = sup.c;
  side.worst_atom = sup.worst;
  side.note = "reject table confines the dynamics to its window; the bound "
              "covers every reachable atom";
  return side;
}

Side extend_table_side(const AtomicMeasureSpace& space,
                       const AtomTransformation& t, bool forward_op) {
  Side side;
  const auto window = t.table_window();
  const long klo = window->first, khi = window->second;
  const long s = t.step();
  const long s_pre = forward_op ? -s : s;
  auto pre = [&](long a) { return forward_op ? t.backward(a) : t.forward(a); };

  const long B = std::labs(s) + 2;
  const long plo = std::min(klo, klo + s) - B;
  const long phi_hi = std::max(khi, khi + s) + B;

  if (space.rule_exact()) {
    // Off the probe range the map is a pure shift, covered in closed form.
    const Side off = *shift_rule_bound(space, s_pre);
    const WindowSup sup = observed_sup(space, plo, phi_hi, pre);
    side.verdict = Verdict::Bounded;
    if (sup.any && sup.c >= off.c) {
      side.c = sup.c;
      side.worst_atom = sup.worst;
    } else {
      side.c = off.c;
      side.worst_atom = off.worst_atom;
    }
    side.note = "table window sup combined with the off-window shift bound";
    return side;
  }

  const TailModel& tl = space.tail_left();
  const TailModel& tr = space.tail_right();
  if (tl.extrapolates() && tr.extrapolates()) {
    const long E =
        2 * std::max(tail_span(tl), tail_span(tr)) + std::labs(s) + 2;
    const WindowSup sup =
        observed_sup(space, std::min(plo, space.lo() - E),
                     std::max(phi_hi, space.hi() + E), pre);
    side.verdict = Verdict::Bounded;
    side.c = sup.c;
    side.worst_atom = sup.worst;
    side.note = "table and window sup extended past both declared tails";
    return side;
  }

  const WindowSup sup = observed_sup(
      space, std::max(plo, space.lo()), std::min(phi_hi, space.hi()), pre);
  side.verdict = Verdict::Undetermined;
  side.c = sup.c;
  side.worst_atom = sup.any ? sup.worst : space.lo();
  side.note = "table space without extrapolating tails on both sides; "
              "window sup is informational only";
  return side;
}

Side check_side(const AtomicMeasureSpace& space, const AtomTransformation& t,
                long wlo, long whi, bool forward_op) {
  if (t.is_shift()) {
    const long s_pre = forward_op ? -t.step() : t.step();
    if (auto closed = shift_rule_bound(space, s_pre)) return *closed;
    return table_space_shift_side(space, s_pre, wlo, whi);
  }
  if (t.off_window() == AtomTransformation::OffWindow::Reject)
    return reject_table_side(space, t, forward_op);
  return extend_table_side(space, t, forward_op);
}

}  // namespace

BoundednessCertificate boundedness_check(
    const AtomicMeasureSpace& space, const AtomTransformation& transform,
    std::optional<std::pair<long, long>> window) {
  const long wlo = window ? window->first : space.lo();
  const long whi = window ? window->second : space.hi();
  if (wlo > whi)
    throw std::invalid_argument("boundedness: window lo > hi");
  BoundednessCertificate cert;
  cert.window_lo = wlo;
  cert.window_hi = whi;
  cert.forward = check_side(space, transform, wlo, whi, true);
  cert.inverse = check_side(space, transform, wlo, whi, false);
  return cert;
}

CompositionSystem::CompositionSystem(AtomicMeasureSpace space,
                                     AtomTransformation transform,
                                     YoungFunction phi)
    : space_(std::move(space)),
      transform_(std::move(transform)),
      phi_(std::move(phi)),
      bounds_(boundedness_check(space_, transform_)) {}

SimpleFunction compose_power(const CompositionSystem& system,
                             const SimpleFunction& f, long n) {
  SimpleFunction g;
  for (const auto& [a, v] : f.coefficients()) {
    const long j = system.transform().iterate(a, -n);
    if (!system.space().weight_available(j))
      throw std::out_of_range(
          "compose power: support escapes the window at atom " +
          std::to_string(j));
    g.set(j, v);
  }
  return g;
}

std::vector<std::pair<long, double>> orbit_gauge_norms(
    const CompositionSystem& system, const SimpleFunction& f, long n_lo,
    long n_hi) {
  if (f.empty())
    throw std::invalid_argument("orbit norms: f must be nonzero");
  if (n_lo > n_hi)
    throw std::invalid_argument("orbit norms: empty n range");
  std::vector<std::pair<long, double>> out;
  out.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n) {
    const SimpleFunction g = compose_power(system, f, n);
    // Reindexing identity: the modular of C^n f equals the transported-
    // weight modular of f; both are the same finite sum.
    const double direct = modular(system.space(), system.phi(), g);
    double transported = 0.0;
    for (const auto& [i, v] : f.coefficients())
      transported += system.space().weight(system.transform().iterate(i, -n)) *
                     system.phi()(std::abs(v));
    if (!(std::abs(direct - transported) <=
          1e-9 * std::max({1.0, direct, transported})))
      throw std::logic_error("orbit norms: modular transfer identity failed");
    out.emplace_back(n, gauge_norm(system.space(), system.phi(), g));
  }
  return out;
}

namespace {

// Deterministic across platforms: raw engine words are mapped by hand
// instead of through distribution objects.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long uniform_long(std::mt19937_64& rng, long lo, long hi) {
  const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

SimpleFunction draw_sample(std::mt19937_64& rng, const ProbeConfig& cfg) {
  const long size = uniform_long(rng, 1, cfg.max_support);
  std::set<long> atoms;
  while (static_cast<long>(atoms.size()) < size)
    atoms.insert(uniform_long(rng, cfg.window_lo, cfg.window_hi));
  const double log_lo = std::log(cfg.coef_lo);
  const double log_hi = std::log(cfg.coef_hi);
  SimpleFunction f;
  for (long a : atoms) {
    const double mag = std::exp(log_lo + unit_double(rng) * (log_hi - log_lo));
    const bool negative = (rng() & 1ull) != 0;
    f.set(a, negative ? -mag : mag);
  }
  return f;
}

}  // namespace

ProbeReport expansivity_probe(const CompositionSystem& system,
                              const ProbeConfig& config) {
  if (config.samples < 1 || config.horizon < 0 || config.max_support < 1 ||
      config.window_lo > config.window_hi || !(config.threshold > 0.0) ||
      !(config.coef_lo > 0.0) || !(config.coef_hi >= config.coef_lo))
    throw std::invalid_argument("probe: invalid configuration");

  ProbeReport report;
  report.config = config;
  report.note = "sampled unit vectors give falsification power only; "
                "exceeding the threshold on every sample does not prove "
                "uniformity";
  std::mt19937_64 rng(config.seed);

  for (long si = 0; si < config.samples; ++si) {
    SimpleFunction raw = draw_sample(rng, config);
    const double norm = gauge_norm(system.space(), system.phi(), raw);
    ProbeSampleResult s;
    s.f = raw.scaled(1.0 / norm);

    auto norm_at = [&](long n, double& out) {
      try {
        out = gauge_norm(system.space(), system.phi(),
                         compose_power(system, s.f, n));
        return true;
      } catch (const std::out_of_range&) {
        return false;
      }
    };

    s.sup_two_sided = 1.0;  // n = 0 contributes N(f) = 1
    s.argmax_two_sided = 0;
    double v = 0.0;
    for (long n = 1; n <= config.horizon; ++n) {
      if (!norm_at(n, v)) {
        s.truncated = true;
        break;
      }
      s.eval_hi = n;
      if (v > s.sup_two_sided) {
        s.sup_two_sided = v;
        s.argmax_two_sided = n;
      }
      if (v > s.sup_forward) {
        s.sup_forward = v;
        s.argmax_forward = n;
      }
    }
    for (long n = -1; n >= -config.horizon; --n) {
      if (!norm_at(n, v)) {
        s.truncated = true;
        break;
      }
      s.eval_lo = n;
      if (v > s.sup_two_sided) {
        s.sup_two_sided = v;
        s.argmax_two_sided = n;
      }
    }

    s.exceeds_two_sided = s.sup_two_sided > config.threshold;
    s.exceeds_forward = s.sup_forward > config.threshold;
    report.count_exceeding += s.exceeds_two_sided ? 1 : 0;
    report.count_exceeding_forward += s.exceeds_forward ? 1 : 0;
    report.min_sup = std::min(report.min_sup, s.sup_two_sided);
    report.min_sup_forward = std::min(report.min_sup_forward, s.sup_forward);
    report.any_truncated = report.any_truncated || s.truncated;
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace orlicz
