#include "orlicz/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orlicz {

TailModel TailModel::none() { return {}; }

TailModel TailModel::monotone_increasing() {
  TailModel t;
  t.kind = Kind::MonotoneIncreasing;
  return t;
}

TailModel TailModel::monotone_decreasing() {
  TailModel t;
  t.kind = Kind::MonotoneDecreasing;
  return t;
}

TailModel TailModel::geometric(double ratio) {
  return geometric_residues({ratio});
}

TailModel TailModel::geometric_residues(std::vector<double> ratios) {
  if (ratios.empty())
    throw std::invalid_argument("tail: geometric needs at least one ratio");
  for (double r : ratios)
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("tail: geometric ratios must be positive");
  TailModel t;
  t.kind = Kind::Geometric;
  t.stride = static_cast<long>(ratios.size());
  t.ratios = std::move(ratios);
  return t;
}

TailModel TailModel::periodic(long period) {
  if (period < 1) throw std::invalid_argument("tail: period must be >= 1");
  TailModel t;
  t.kind = Kind::Periodic;
  t.period = period;
  return t;
}

std::string TailModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::None: return "none";
    case Kind::MonotoneIncreasing: return "monotone_increasing";
    case Kind::MonotoneDecreasing: return "monotone_decreasing";
    case Kind::Geometric:
      os << "geometric(stride=" << stride << ")";
      return os.str();
    default:
      os << "periodic(period=" << period << ")";
      return os.str();
  }
}

namespace {

long residue(long i, long q) { return ((i % q) + q) % q; }

}  // namespace

AtomicMeasureSpace AtomicMeasureSpace::geometric(double r, long lo, long hi) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("space: geometric ratio must be positive");
  if (lo > hi) throw std::invalid_argument("space: window lo > hi");
  AtomicMeasureSpace s;
  s.rule_ = Rule::Geometric;
  s.param_ = r;
  s.lo_ = lo;
  s.hi_ = hi;
  // Outward from the window, stepping left multiplies by 1/r, right by r.
  s.tail_left_ = TailModel::geometric(1.0 / r);
  s.tail_right_ = TailModel::geometric(r);
  return s;
}

AtomicMeasureSpace AtomicMeasureSpace::two_sided_exp(double base, long lo,
                                                     long hi) {
  if (!(base > 0.0) || !std::isfinite(base))
    throw std::invalid_argument("space: base must be positive");
  if (lo > 0 || hi < 0)
    throw std::invalid_argument("space: two_sided_exp window must contain 0");
  AtomicMeasureSpace s;
  s.rule_ = Rule::TwoSidedExp;
  s.param_ = base;
  s.lo_ = lo;
  s.hi_ = hi;
  s.tail_left_ = TailModel::geometric(base);
  s.tail_right_ = TailModel::geometric(base);
  return s;
}

AtomicMeasureSpace AtomicMeasureSpace::table(
    const std::map<long, double>& weights, TailModel left, TailModel right) {
  if (weights.empty()) throw std::invalid_argument("space: empty table");
  AtomicMeasureSpace s;
  s.rule_ = Rule::Table;
  s.lo_ = weights.begin()->first;
  s.hi_ = weights.rbegin()->first;
  if (static_cast<long>(weights.size()) != s.hi_ - s.lo_ + 1)
    throw std::invalid_argument("space: table window must be contiguous");
  for (const auto& [i, w] : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("space: weights must be positive finite");
  s.weights_ = weights;
  s.tail_left_ = std::move(left);
  s.tail_right_ = std::move(right);
  s.verify_tails();
  return s;
}

void AtomicMeasureSpace::verify_tails() const {
  const long n = hi_ - lo_ + 1;
  auto verify = [&](const TailModel& tail, bool left_side) {
    const char* side = left_side ? "left" : "right";
    auto w = [&](long i) { return weights_.at(i); };
    // The model describes the continuation at the window edge, so it is
    // checked on the outer quarter (at least a couple of model periods).
    long need = 3;
    if (tail.kind == TailModel::Kind::Geometric) need = 2 * tail.stride + 1;
    if (tail.kind == TailModel::Kind::Periodic) need = 2 * tail.period + 1;
    const long seg = std::max(need, n / 4);
    if (tail.kind != TailModel::Kind::None && seg > n)
      throw std::invalid_argument(std::string("space: window too small to "
                                              "verify ") +
                                  side + " tail");
    const long a = left_side ? lo_ : hi_ - seg + 1;
    const long b = left_side ? lo_ + seg - 1 : hi_;
    switch (tail.kind) {
      case TailModel::Kind::None:
        return;
      case TailModel::Kind::MonotoneIncreasing:
      case TailModel::Kind::MonotoneDecreasing: {
        const bool grows_outward = tail.kind == TailModel::Kind::MonotoneIncreasing;
        for (long i = a; i < b; ++i) {
          // Outward means i decreasing on the left side, increasing on the
          // right; compare neighbors accordingly.
          const double inner = left_side ? w(i + 1) : w(i);
          const double outer = left_side ? w(i) : w(i + 1);
          const bool ok = grows_outward ? outer >= inner * (1.0 - 1e-12)
                                        : outer <= inner * (1.0 + 1e-12);
          if (!ok)
            throw std::invalid_argument(
                std::string("space: declared monotone ") + side +
                " tail contradicted at atom " + std::to_string(i));
        }
        return;
      }
      case TailModel::Kind::Geometric: {
        const long q = tail.stride;
        for (long i = a + q; i <= b; ++i) {
          const double expected = left_side
                                      ? tail.ratios[residue(i, q)] * w(i)
                                      : w(i - q) * tail.ratios[residue(i - q, q)];
          const double actual = left_side ? w(i - q) : w(i);
          if (std::abs(actual - expected) > 1e-9 * std::max(actual, expected))
            throw std::invalid_argument(
                std::string("space: declared geometric ") + side +
                " tail contradicted at atom " + std::to_string(i));
        }
        return;
      }
      case TailModel::Kind::Periodic: {
        for (long i = a + tail.period; i <= b; ++i) {
          if (std::abs(w(i) - w(i - tail.period)) >
              1e-9 * std::max(w(i), w(i - tail.period)))
            throw std::invalid_argument(
                std::string("space: declared periodic ") + side +
                " tail contradicted at atom " + std::to_string(i));
        }
        return;
      }
    }
  };
  verify(tail_left_, true);
  verify(tail_right_, false);
}

bool AtomicMeasureSpace::weight_available(long i) const {
  if (rule_ != Rule::Table) return true;
  if (in_window(i)) return true;
  return (i < lo_ ? tail_left_ : tail_right_).extrapolates();
}

double AtomicMeasureSpace::log_weight(long i) const {
  switch (rule_) {
    case Rule::Geometric:
      return static_cast<double>(i) * std::log(param_);
    case Rule::TwoSidedExp:
      return static_cast<double>(std::llabs(i)) * std::log(param_);
    default:
      break;
  }
  if (in_window(i)) return std::log(weights_.at(i));
  const bool left = i < lo_;
  const TailModel& tail = left ? tail_left_ : tail_right_;
  if (!tail.extrapolates())
    throw std::out_of_range("space: weight of atom " + std::to_string(i) +
                            " is not available beyond the window");
  if (tail.kind == TailModel::Kind::Periodic) {
    const long p = tail.period;
    const long anchor =
        left ? lo_ + residue(i - lo_, p) : hi_ - residue(hi_ - i, p);
    return std::log(weights_.at(anchor));
  }
  const long q = tail.stride;
  // Anchor at the window cell sharing i's residue class, nearest the edge.
  const long anchor = left ? lo_ + residue(i - lo_, q) : hi_ - residue(hi_ - i, q);
  const long steps = left ? (anchor - i) / q : (i - anchor) / q;
  return std::log(weights_.at(anchor)) +
         static_cast<double>(steps) * std::log(tail.ratios[residue(i, q)]);
}

double AtomicMeasureSpace::weight(long i) const {
  if (rule_ == Rule::Table && in_window(i)) return weights_.at(i);
  if (!weight_available(i))
    throw std::out_of_range("space: weight of atom " + std::to_string(i) +
                            " is not available beyond the window");
  return std::exp(log_weight(i));
}

double AtomicMeasureSpace::set_measure(const std::vector<long>& atoms) const {
  std::vector<long> sorted = atoms;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  double sum = 0.0;
  for (long i : sorted) sum += weight(i);
  return sum;
}

std::vector<long> AtomicMeasureSpace::window_atoms() const {
  std::vector<long> out;
  out.reserve(static_cast<size_t>(hi_ - lo_ + 1));
  for (long i = lo_; i <= hi_; ++i) out.push_back(i);
  return out;
}

SimpleFunction::SimpleFunction(std::map<long, double> coeffs) {
  for (auto& [i, v] : coeffs) {
    if (!std::isfinite(v))
      throw std::invalid_argument("simple function: coefficients must be finite");
    if (v != 0.0) coeffs_.emplace(i, v);
  }
}

SimpleFunction SimpleFunction::indicator(const std::vector<long>& atoms) {
  SimpleFunction f;
  for (long i : atoms) f.coeffs_[i] = 1.0;
  return f;
}

double SimpleFunction::at(long i) const {
  const auto it = coeffs_.find(i);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void SimpleFunction::set(long i, double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("simple function: coefficients must be finite");
  if (value == 0.0)
    coeffs_.erase(i);
  else
    coeffs_[i] = value;
}

std::vector<long> SimpleFunction::support() const {
  std::vector<long> out;
  out.reserve(coeffs_.size());
  for (const auto& [i, v] : coeffs_) out.push_back(i);
  return out;
}

double SimpleFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [i, v] : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

SimpleFunction SimpleFunction::scaled(double alpha) const {
  SimpleFunction out;
  if (alpha == 0.0) return out;
  for (const auto& [i, v] : coeffs_) out.coeffs_[i] = alpha * v;
  return out;
}

SimpleFunction SimpleFunction::plus(const SimpleFunction& g) const {
  SimpleFunction out = *this;
  for (const auto& [i, v] : g.coeffs_) out.set(i, out.at(i) + v);
  return out;
}

SimpleFunction SimpleFunction::minus(const SimpleFunction& g) const {
  return plus(g.scaled(-1.0));
}

}  // namespace orlicz
