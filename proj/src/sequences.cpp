#include "orlicz/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "orlicz/detail/numeric.hpp"

namespace orlicz {

namespace {

constexpr double kUnitSlack = 1e-12;

long residue(long i, long q) { return ((i % q) + q) % q; }

std::vector<long> sorted_unique(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool near_one(double x) { return std::abs(x - 1.0) <= kUnitSlack; }

// mu(W + k*m) for one k, through log-weights so deep tail cells stay
// representable.
double shifted_measure(const AtomicMeasureSpace& space,
                       const std::vector<long>& W, long m, long k) {
  std::vector<double> logs;
  logs.reserve(W.size());
  for (long a : W) logs.push_back(space.log_weight(a + k * m));
  return std::exp(detail::logsumexp(logs));
}

SequenceTail classify_cycle(std::vector<double> values, std::string from) {
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo <= 1e-9 * std::max(1.0, hi))
    return SequenceTail::limit_positive(values[0], std::move(from));
  return SequenceTail::periodic(std::move(values), std::move(from));
}

}  // namespace

SequenceTail SequenceTail::none(std::string why) {
  SequenceTail t;
  t.provenance = std::move(why);
  return t;
}

SequenceTail SequenceTail::geometric(double ratio, std::string from) {
  SequenceTail t;
  t.kind = Kind::Geometric;
  t.ratio = ratio;
  t.exact = true;
  t.provenance = std::move(from);
  return t;
}

SequenceTail SequenceTail::periodic(std::vector<double> cycle,
                                    std::string from) {
  SequenceTail t;
  t.kind = Kind::Periodic;
  t.cycle = std::move(cycle);
  t.exact = true;
  t.provenance = std::move(from);
  return t;
}

SequenceTail SequenceTail::limit_zero(std::string from) {
  SequenceTail t;
  t.kind = Kind::LimitZero;
  t.exact = true;
  t.provenance = std::move(from);
  return t;
}

SequenceTail SequenceTail::limit_infinity(std::string from) {
  SequenceTail t;
  t.kind = Kind::LimitInfinity;
  t.exact = true;
  t.provenance = std::move(from);
  return t;
}

SequenceTail SequenceTail::limit_positive(double value, std::string from) {
  SequenceTail t;
  t.kind = Kind::LimitPositive;
  t.limit = value;
  t.exact = true;
  t.provenance = std::move(from);
  return t;
}

SequenceTail mu_sequence_tail(const AtomicMeasureSpace& space, long m,
                              const std::vector<long>& W_in) {
  const std::vector<long> W = sorted_unique(W_in);
  if (W.empty()) throw std::invalid_argument("mu tail: W must be non-empty");

  if (m == 0)
    return SequenceTail::limit_positive(space.set_measure(W),
                                        "constant sequence (m = 0)");

  if (space.rule() == AtomicMeasureSpace::Rule::Geometric) {
    const double factor = std::pow(space.rule_param(), static_cast<double>(m));
    if (near_one(factor))
      return SequenceTail::limit_positive(space.set_measure(W),
                                          "geometric rule, unit step factor");
    return SequenceTail::geometric(factor, "geometric weight rule");
  }

  if (space.rule() == AtomicMeasureSpace::Rule::TwoSidedExp) {
    const double factor =
        std::pow(space.rule_param(), static_cast<double>(std::labs(m)));
    if (near_one(factor)) {
      // Flat weights: the sum is eventually the drifted-side constant.
      const long k_big =
          4 + std::max(std::labs(space.hi()), std::labs(space.lo())) /
                  std::max<long>(1, std::labs(m));
      return SequenceTail::limit_positive(
          shifted_measure(space, W, m, k_big + 2),
          "two-sided rule, unit step factor");
    }
    return SequenceTail::geometric(factor, "two-sided exponential rule");
  }

  // Table space: every atom drifts toward the side of sign(m), so that
  // side's declared tail model decides the behavior.
  const bool right = m > 0;
  const TailModel& tail = right ? space.tail_right() : space.tail_left();
  const char* side = right ? "right" : "left";

  switch (tail.kind) {
    case TailModel::Kind::None:
      return SequenceTail::none(std::string("no declared ") + side +
                                " tail model");
    case TailModel::Kind::MonotoneIncreasing:
      return SequenceTail::limit_infinity(
          std::string("declared monotone-increasing ") + side + " tail");
    case TailModel::Kind::MonotoneDecreasing:
      return SequenceTail::limit_zero(
          std::string("declared monotone-decreasing ") + side + " tail");
    default:
      break;
  }

  // Steps needed before every atom sits past the window edge on the drift
  // side, plus slack so anchors and full cycles stay in the tail region.
  const long reach = right ? (space.hi() - W.front()) / std::labs(m)
                           : (W.back() - space.lo()) / std::labs(m);
  const long settle = std::max<long>(reach, 0) + 2;

  if (tail.kind == TailModel::Kind::Periodic) {
    const long P = tail.period;
    const long L = P / std::gcd(std::labs(m), P);
    std::vector<double> cycle;
    cycle.reserve(static_cast<size_t>(L));
    for (long k0 = 0; k0 < L; ++k0)
      cycle.push_back(shifted_measure(space, W, m, settle + L + k0));
    return classify_cycle(std::move(cycle),
                          std::string("declared periodic ") + side + " tail");
  }

  // Geometric tail with stride q: along each phase class k mod L the step
  // lands q | L*m apart, so each atom's weight picks up the fixed factor
  // ratios[class]^(|m|/g) per L steps.
  const long q = tail.stride;
  const long g = std::gcd(std::labs(m), q);
  const long L = q / g;
  const double stride_power = static_cast<double>(std::labs(m) / g);

  bool all_below = true, all_above = true, all_unit = true;
  std::vector<bool> phase_has_growth(static_cast<size_t>(L), false);
  double common = 0.0;
  bool common_set = false, common_ok = true;
  for (long a : W) {
    for (long k0 = 0; k0 < L; ++k0) {
      const double base = tail.ratios[static_cast<size_t>(residue(a + k0 * m, q))];
      const double gamma = std::pow(base, stride_power);
      if (!common_set) {
        common = gamma;
        common_set = true;
      } else if (std::abs(gamma - common) > 1e-12 * common) {
        common_ok = false;
      }
      if (gamma > 1.0 + kUnitSlack) {
        all_below = false;
        phase_has_growth[static_cast<size_t>(k0)] = true;
      } else if (gamma < 1.0 - kUnitSlack) {
        all_above = false;
      } else {
        all_below = all_above = false;
        continue;
      }
      all_unit = false;
    }
  }

  const std::string from = std::string("declared geometric ") + side + " tail";
  if (L == 1 && common_ok) {
    if (near_one(common))
      return SequenceTail::limit_positive(
          shifted_measure(space, W, m, settle + 2), from + ", unit factor");
    return SequenceTail::geometric(common, from);
  }
  if (all_above) return SequenceTail::limit_infinity(from);
  if (all_below) return SequenceTail::limit_zero(from);
  if (all_unit) {
    std::vector<double> cycle;
    cycle.reserve(static_cast<size_t>(L));
    for (long k0 = 0; k0 < L; ++k0)
      cycle.push_back(shifted_measure(space, W, m, settle + L + k0));
    return classify_cycle(std::move(cycle), from + ", unit factors");
  }
  if (std::all_of(phase_has_growth.begin(), phase_has_growth.end(),
                  [](bool b) { return b; }))
    return SequenceTail::limit_infinity(from + ", a growing class per phase");
  return SequenceTail::none(from + ": mixed per-phase factors");
}

SequenceTail orbit_mu_tail(const AtomicMeasureSpace& space,
                           const AtomTransformation& transform,
                           const std::vector<long>& W_in, int dir,
                           long max_walk) {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("orbit tail: dir must be +1 or -1");
  std::vector<long> cur = sorted_unique(W_in);
  if (cur.empty())
    throw std::invalid_argument("orbit tail: W must be non-empty");

  if (transform.is_shift())
    return mu_sequence_tail(space, dir * transform.step(), cur);

  const auto window = transform.table_window();
  const long key_lo = window->first, key_hi = window->second;
  const long s = transform.step();
  const bool reject =
      transform.off_window() == AtomTransformation::OffWindow::Reject;

  if (reject) {
    for (long a : cur)
      if (a < key_lo || a > key_hi)
        return SequenceTail::none("atom " + std::to_string(a) +
                                  " outside the reject-table window");
  }

  // Walk the orbit of the set. A revisited state proves eventual
  // periodicity; with extend-by-shift, once every atom is past the table
  // on the drift side the rest of the orbit is a pure shift.
  const long m_eff = dir > 0 ? s : -s;
  auto escaped = [&](const std::vector<long>& st) {
    if (reject || s == 0) return false;
    // Region that future steps may still map through: keys for the forward
    // walk, values (= keys + s) for the backward walk.
    const long blk_lo = dir > 0 ? key_lo : key_lo + s;
    const long blk_hi = dir > 0 ? key_hi : key_hi + s;
    if (m_eff > 0) return st.front() > blk_hi;
    return st.back() < blk_lo;
  };

  std::map<std::vector<long>, long> seen;
  std::vector<std::vector<long>> states;
  for (long n = 0; n <= max_walk; ++n) {
    const auto it = seen.find(cur);
    if (it != seen.end()) {
      const long start = it->second;
      const long T = n - start;
      std::vector<double> cycle;
      cycle.reserve(static_cast<size_t>(T));
      for (long j = 0; j < T; ++j)
        cycle.push_back(space.set_measure(states[static_cast<size_t>(start + j)]));
      return classify_cycle(std::move(cycle),
                            "orbit cycles with period " + std::to_string(T));
    }
    if (escaped(cur)) {
      SequenceTail t = mu_sequence_tail(space, m_eff, cur);
      if (!t.provenance.empty()) t.provenance += "; ";
      t.provenance += "pure-shift regime from orbit step " + std::to_string(n);
      return t;
    }
    seen.emplace(cur, n);
    states.push_back(cur);
    std::vector<long> next;
    next.reserve(cur.size());
    for (long a : cur)
      next.push_back(dir > 0 ? transform.forward(a) : transform.backward(a));
    cur = sorted_unique(std::move(next));
  }
  return SequenceTail::none("orbit not resolved within the walk horizon");
}

SequenceTail apply_inverse_phi(const SequenceTail& mu_tail,
                               const YoungFunction& phi) {
  const std::string via = mu_tail.provenance.empty()
                              ? std::string("via Phi^{-1}")
                              : mu_tail.provenance + "; via Phi^{-1}";
  switch (mu_tail.kind) {
    case SequenceTail::Kind::None:
      return mu_tail;
    case SequenceTail::Kind::LimitZero: {
      SequenceTail t = SequenceTail::limit_infinity(via);
      t.exact = mu_tail.exact;
      return t;
    }
    case SequenceTail::Kind::LimitInfinity: {
      SequenceTail t = SequenceTail::limit_zero(via);
      t.exact = mu_tail.exact;
      return t;
    }
    case SequenceTail::Kind::LimitPositive: {
      SequenceTail t =
          SequenceTail::limit_positive(phi.inverse(1.0 / mu_tail.limit), via);
      t.exact = mu_tail.exact;
      return t;
    }
    case SequenceTail::Kind::Periodic: {
      std::vector<double> cycle;
      cycle.reserve(mu_tail.cycle.size());
      for (double v : mu_tail.cycle) cycle.push_back(phi.inverse(1.0 / v));
      SequenceTail t = SequenceTail::periodic(std::move(cycle), via);
      t.exact = mu_tail.exact;
      return t;
    }
    case SequenceTail::Kind::Geometric:
      break;
  }

  const double gamma = mu_tail.ratio;
  if (phi.family() == YoungFamily::Power ||
      phi.family() == YoungFamily::PowerOverP) {
    // Phi^{-1} is a pure power of its argument, so geometric stays
    // geometric with exponent -1/p.
    SequenceTail t = SequenceTail::geometric(
        std::pow(gamma, -1.0 / phi.param()), via + " (power family)");
    t.exact = mu_tail.exact;
    return t;
  }
  if (near_one(gamma))
    return SequenceTail::none(via + ": geometric ratio 1 without a value");
  SequenceTail t = gamma > 1.0 ? SequenceTail::limit_zero(via)
                               : SequenceTail::limit_infinity(via);
  t.exact = mu_tail.exact;
  return t;
}

double log_inverse_of_reciprocal(const YoungFunction& phi, double log_mu) {
  if (!std::isfinite(log_mu))
    throw std::invalid_argument("log inverse: log_mu must be finite");
  switch (phi.family()) {
    case YoungFamily::Power:
      return -log_mu / phi.param();
    case YoungFamily::PowerOverP:
      return (std::log(phi.param()) - log_mu) / phi.param();
    case YoungFamily::ExpMinusOne: {
      // a = log1p(exp(-log_mu)); past the overflow point log1p(y) ~ log y.
      if (-log_mu <= 700.0) return std::log(std::log1p(std::exp(-log_mu)));
      return std::log(-log_mu);
    }
    case YoungFamily::PLog: {
      // Solve p*t + log(log(1+e^t)) = -log_mu for t = log x in log space.
      const double p = phi.param();
      auto g = [&](double t) {
        const double inner =
            t > 700.0 ? t : std::log(std::log1p(std::exp(t)));
        return p * t + inner;
      };
      double lo = -800.0, hi = 800.0;
      if (g(lo) >= -log_mu) return lo;
      if (g(hi) <= -log_mu) return hi;
      return detail::bisect_increasing(g, lo, hi, -log_mu, 1e-15, 300);
    }
    case YoungFamily::Table: {
      if (-log_mu > 700.0) return std::numeric_limits<double>::quiet_NaN();
      return std::log(phi.inverse(std::exp(-log_mu)));
    }
  }
  throw std::logic_error("log inverse: unhandled family");
}

double log_mu_iterate(const AtomicMeasureSpace& space,
                      const AtomTransformation& transform,
                      const std::vector<long>& W, long k) {
  const std::vector<long> atoms = sorted_unique(W);
  if (atoms.empty())
    throw std::invalid_argument("log mu: W must be non-empty");
  std::vector<double> logs;
  logs.reserve(atoms.size());
  for (long a : atoms)
    logs.push_back(space.log_weight(transform.iterate(a, k)));
  return detail::logsumexp(logs);
}

}  // namespace orlicz
