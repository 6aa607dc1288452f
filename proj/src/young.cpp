#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/detail/numeric.hpp"

namespace orlicz {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double LogGrid::decades() const {
  return std::log10(hi / lo);
}

bool LogGrid::structurally_valid() const {
  return std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi >= lo &&
         points >= 1;
}

bool LogGrid::adequate() const {
  return structurally_valid() && points >= 64 && decades() >= 6.0 - 1e-9;
}

std::vector<double> LogGrid::sample() const {
  if (!structurally_valid())
    throw std::invalid_argument("LogGrid: degenerate window");
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(points));
  if (points == 1) {
    xs.push_back(lo);
    return xs;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs.push_back(lo * std::exp(step * i));
  xs.back() = hi;
  return xs;
}

const char* to_string(YoungFamily f) {
  switch (f) {
    case YoungFamily::Power: return "power";
    case YoungFamily::PowerOverP: return "power_over_p";
    case YoungFamily::ExpMinusOne: return "exp_minus_one";
    case YoungFamily::PLog: return "p_log";
    default: return "table";
  }
}

struct YoungFunction::Impl {
  YoungFamily family = YoungFamily::Power;
  double p = kNaN;
  std::vector<double> xs, ys;  // table nodes; implied (0, 0) not stored
  bool strict = true;
};

YoungFunction::YoungFunction(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("power: requires p >= 1");
  auto impl = std::make_shared<Impl>();
  impl->family = YoungFamily::Power;
  impl->p = p;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::power_over_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("power_over_p: requires p > 1");
  auto impl = std::make_shared<Impl>();
  impl->family = YoungFamily::PowerOverP;
  impl->p = p;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::exp_minus_one() {
  auto impl = std::make_shared<Impl>();
  impl->family = YoungFamily::ExpMinusOne;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::p_log(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("p_log: requires p >= 1");
  auto impl = std::make_shared<Impl>();
  impl->family = YoungFamily::PLog;
  impl->p = p;
  return YoungFunction(std::move(impl));
}

YoungFunction YoungFunction::table(std::vector<double> xs,
                                   std::vector<double> ys, bool strict) {
  if (xs.empty() || xs.size() != ys.size())
    throw std::invalid_argument("table: xs/ys must be nonempty, same length");
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw std::invalid_argument("table: nodes must be finite");
    if (xs[i] <= 0.0) throw std::invalid_argument("table: xs must be > 0");
    if (ys[i] < 0.0) throw std::invalid_argument("table: ys must be >= 0");
    if (i > 0 && xs[i] <= xs[i - 1])
      throw std::invalid_argument("table: xs must be strictly increasing");
  }
  if (ys.back() <= 0.0)
    throw std::invalid_argument("table: last value must be positive");
  bool seen_positive = false;
  for (size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] > 0.0) seen_positive = true;
    if (i > 0) {
      if (seen_positive && ys[i - 1] > 0.0 && ys[i] <= ys[i - 1])
        throw std::invalid_argument(
            "table: ys must be strictly increasing where positive");
      if (ys[i] < ys[i - 1])
        throw std::invalid_argument("table: ys must not decrease");
    }
  }
  if (strict && ys.front() <= 0.0)
    throw std::invalid_argument("table: strict table requires ys > 0");
  // Chord slopes including the implied origin node must not decrease.
  double prev_slope = ys[0] / xs[0];
  for (size_t i = 1; i < xs.size(); ++i) {
    const double s = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    const double tol = 1e-8 * std::max({std::abs(s), std::abs(prev_slope), 1.0});
    if (s < prev_slope - tol)
      throw std::invalid_argument("table: chord slopes must not decrease");
    prev_slope = std::max(prev_slope, s);
  }
  auto impl = std::make_shared<Impl>();
  impl->family = YoungFamily::Table;
  impl->xs = std::move(xs);
  impl->ys = std::move(ys);
  impl->strict = strict;
  return YoungFunction(std::move(impl));
}

namespace {

double table_last_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const size_t n = xs.size();
  if (n == 1) return ys[0] / xs[0];
  return (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
}

double table_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                  double x) {
  if (x == 0.0) return 0.0;
  if (x <= xs.front()) return x * (ys.front() / xs.front());
  if (x >= xs.back())
    return ys.back() + table_last_slope(xs, ys) * (x - xs.back());
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t j = static_cast<size_t>(it - xs.begin());
  const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

// Leftmost x with table value y; exact on nodes.
double table_inverse(const std::vector<double>& xs,
                     const std::vector<double>& ys, double y) {
  if (y == 0.0) return 0.0;
  if (y >= ys.back()) {
    if (y == ys.back()) return xs.back();
    return xs.back() + (y - ys.back()) / table_last_slope(xs, ys);
  }
  const auto it = std::lower_bound(ys.begin(), ys.end(), y);
  const size_t j = static_cast<size_t>(it - ys.begin());
  if (ys[j] == y) return xs[j];
  const double x_prev = j == 0 ? 0.0 : xs[j - 1];
  const double y_prev = j == 0 ? 0.0 : ys[j - 1];
  const double t = (y - y_prev) / (ys[j] - y_prev);
  return x_prev + t * (xs[j] - x_prev);
}

}  // namespace

double YoungFunction::operator()(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("YoungFunction: x must be >= 0");
  const Impl& im = *impl_;
  switch (im.family) {
    case YoungFamily::Power: return std::pow(x, im.p);
    case YoungFamily::PowerOverP: return std::pow(x, im.p) / im.p;
    case YoungFamily::ExpMinusOne: return std::expm1(x);
    case YoungFamily::PLog: return std::pow(x, im.p) * std::log1p(x);
    default: return table_eval(im.xs, im.ys, x);
  }
}

double YoungFunction::inverse(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("YoungFunction: y must be >= 0");
  const Impl& im = *impl_;
  switch (im.family) {
    case YoungFamily::Power: return std::pow(y, 1.0 / im.p);
    case YoungFamily::PowerOverP: return std::pow(im.p * y, 1.0 / im.p);
    case YoungFamily::ExpMinusOne: return std::log1p(y);
    case YoungFamily::PLog: {
      if (y == 0.0) return 0.0;
      double hi = 1.0;
      while ((*this)(hi) < y) {
        hi *= 2.0;
        if (hi > 1e300) return kInf;
      }
      return detail::bisect_increasing([this](double x) { return (*this)(x); },
                                       0.0, hi, y, 1e-15);
    }
    default: return table_inverse(im.xs, im.ys, y);
  }
}

YoungFamily YoungFunction::family() const { return impl_->family; }
double YoungFunction::param() const { return impl_->p; }

bool YoungFunction::strictly_positive() const {
  if (impl_->family != YoungFamily::Table) return true;
  return impl_->ys.front() > 0.0;
}

bool YoungFunction::has_bounded_data() const {
  return impl_->family == YoungFamily::Table;
}

double YoungFunction::data_min() const {
  return has_bounded_data() ? impl_->xs.front() : 0.0;
}

double YoungFunction::data_max() const {
  return has_bounded_data() ? impl_->xs.back() : kInf;
}

namespace {

// Shared preamble for the growth checks: throws on degenerate windows and
// reports (via the return flag) windows too small to certify anything.
bool growth_window_ok(const LogGrid& window, GrowthCertificate& cert) {
  if (!window.structurally_valid())
    throw std::invalid_argument("growth check: degenerate window");
  cert.window = window;
  if (!window.adequate()) {
    cert.verdict = Status::Undetermined;
    cert.note = "window has fewer than 64 points or spans fewer than 6 "
                "decades; no certificate attempted";
    return false;
  }
  return true;
}

// Grid xs restricted to [lo_cap, hi_cap]; used for table evidence.
std::vector<double> grid_between(const LogGrid& window, double lo_cap,
                                 double hi_cap) {
  std::vector<double> out;
  for (double x : window.sample())
    if (x >= lo_cap && x <= hi_cap) out.push_back(x);
  return out;
}

}  // namespace

Delta2Certificate check_delta2(const YoungFunction& phi,
                               const LogGrid& window) {
  Delta2Certificate cert;
  if (!growth_window_ok(window, cert)) return cert;

  switch (phi.family()) {
    case YoungFamily::Power:
    case YoungFamily::PowerOverP: {
      cert.verdict = Status::Holds;
      cert.K = std::pow(2.0, phi.param());
      cert.x0 = 0.0;
      cert.closed_form = true;
      cert.note = "ratio phi(2x)/phi(x) is constant 2^p";
      return cert;
    }
    case YoungFamily::PLog: {
      cert.verdict = Status::Holds;
      cert.K = std::pow(2.0, phi.param() + 1.0);
      cert.x0 = 0.0;
      cert.closed_form = true;
      cert.note = "log(1+2x) <= 2 log(1+x) for x >= 0, so K = 2^(p+1)";
      return cert;
    }
    case YoungFamily::ExpMinusOne: {
      cert.verdict = Status::Fails;
      cert.closed_form = true;
      cert.note = "phi(2x)/phi(x) = e^x + 1 is unbounded";
      auto xs = grid_between(window, 1.0, 500.0);
      if (xs.empty()) xs = {1.0, 2.0, 4.0, 8.0};
      const size_t take = std::min<size_t>(xs.size(), 8);
      for (size_t i = xs.size() - take; i < xs.size(); ++i)
        cert.counterexample.emplace_back(xs[i], std::exp(xs[i]) + 1.0);
      return cert;
    }
    default: {
      // Table evidence is grid-only: the data window cannot certify the
      // x -> inf behavior either way.
      const double lo = std::max(window.lo, phi.data_min());
      const double hi = std::min(window.hi, phi.data_max() / 2.0);
      cert.verdict = Status::Undetermined;
      if (!(hi > lo) || std::log10(hi / lo) < 6.0 - 1e-9) {
        cert.note = "table data intersected with the window spans fewer "
                    "than 6 decades";
        return cert;
      }
      double worst = 0.0, worst_x = lo;
      for (double x : grid_between(window, lo, hi)) {
        const double r = phi(2.0 * x) / phi(x);
        if (r > worst) {
          worst = r;
          worst_x = x;
        }
      }
      cert.K = worst;
      cert.x0 = lo;
      cert.note = "grid evidence only: max phi(2x)/phi(x) on the window; "
                  "behavior beyond the data window is not certified";
      cert.counterexample.emplace_back(worst_x, worst);
      return cert;
    }
  }
}

DeltaPrimeCertificate check_delta_prime(const YoungFunction& phi,
                                        const LogGrid& window) {
  DeltaPrimeCertificate cert;
  if (!growth_window_ok(window, cert)) return cert;

  switch (phi.family()) {
    case YoungFamily::Power: {
      cert.verdict = Status::Holds;
      cert.K = 1.0;
      cert.x0 = 0.0;
      cert.closed_form = true;
      cert.note = "(xy)^p = x^p y^p";
      return cert;
    }
    case YoungFamily::PowerOverP: {
      cert.verdict = Status::Holds;
      cert.K = phi.param();
      cert.x0 = 0.0;
      cert.closed_form = true;
      cert.note = "(xy)^p/p = p (x^p/p)(y^p/p)";
      return cert;
    }
    case YoungFamily::PLog: {
      cert.verdict = Status::Holds;
      cert.K = 2.0;
      cert.x0 = std::exp(1.0) - 1.0;
      cert.closed_form = true;
      cert.note = "for x, y >= e-1: log(1+xy) <= log(1+x) + log(1+y) "
                  "<= 2 log(1+x) log(1+y)";
      return cert;
    }
    case YoungFamily::ExpMinusOne: {
      cert.verdict = Status::Fails;
      cert.closed_form = true;
      cert.note = "phi(x*x) / phi(x)^2 ~ e^(x^2 - 2x) is unbounded";
      auto xs = grid_between(window, 2.0, 25.0);
      if (xs.empty()) xs = {3.0, 4.0, 5.0, 6.0};
      const size_t take = std::min<size_t>(xs.size(), 8);
      for (size_t i = xs.size() - take; i < xs.size(); ++i) {
        const double x = xs[i];
        const double log_ratio =
            std::log(std::expm1(x * x)) - 2.0 * std::log(std::expm1(x));
        cert.counterexample.emplace_back(
            x, log_ratio < 700.0 ? std::exp(log_ratio) : kInf);
      }
      return cert;
    }
    default: {
      cert.verdict = Status::Undetermined;
      const double lo = std::max({window.lo, phi.data_min(), 1.0});
      const double hi = std::min(window.hi, phi.data_max());
      if (!(hi > lo * 2.0)) {
        cert.note = "table data leaves no room for product pairs x*y <= "
                    "data_max with x, y >= 1";
        return cert;
      }
      double worst = 0.0;
      std::pair<double, double> worst_pair{lo, lo};
      const auto xs = grid_between(window, lo, hi);
      for (double x : xs) {
        for (double y : xs) {
          if (x * y > hi) break;
          const double r = phi(x * y) / (phi(x) * phi(y));
          if (r > worst) {
            worst = r;
            worst_pair = {x, y};
          }
        }
      }
      cert.K = worst;
      cert.x0 = lo;
      cert.note = "grid evidence only: max phi(xy)/(phi(x)phi(y)) over grid "
                  "pairs with x*y inside the data window";
      cert.counterexample.emplace_back(worst_pair.first, worst);
      return cert;
    }
  }
}

ConjugateResult conjugate_tabulated(const YoungFunction& phi,
                                    const ConjugateSpec& spec) {
  if (!(spec.y_lo > 0.0) || !(spec.y_hi > spec.y_lo) ||
      spec.points_per_decade < 1 || !(spec.x_cap > 0.0))
    throw std::invalid_argument("conjugate: invalid spec");
  const double decades = std::log10(spec.y_hi / spec.y_lo);
  const int n = std::max(2, static_cast<int>(std::ceil(
                                decades * spec.points_per_decade)) + 1);
  LogGrid grid{spec.y_lo, spec.y_hi, n};
  ConjugateResult result{YoungFunction::power(1.0), {}, spec.x_cap, false};
  std::vector<double> ys_grid = grid.sample();
  std::vector<double> values;
  values.reserve(ys_grid.size());
  for (double y : ys_grid) {
    auto h = [&](double x) { return x * y - phi(x); };
    const double x_opt = detail::golden_maximize(h, 0.0, spec.x_cap);
    double v = std::max(0.0, h(x_opt));
    if (x_opt > 0.99 * spec.x_cap && h(spec.x_cap) >= h(0.99 * spec.x_cap)) {
      // Still climbing at the cap: the table entry is only a lower bound.
      result.undetermined_ys.push_back(y);
      v = std::max(v, h(spec.x_cap));
    }
    if (!values.empty()) v = std::max(v, values.back());  // monotone repair
    values.push_back(v);
  }
  if (values.back() <= 0.0)
    throw std::invalid_argument("conjugate: vanishes on the whole grid");
  result.psi = YoungFunction::table(std::move(ys_grid), std::move(values),
                                    /*strict=*/false);
  return result;
}

ConjugateResult conjugate(const YoungFunction& phi, const ConjugateSpec& spec) {
  if (phi.family() == YoungFamily::PowerOverP) {
    const double p = phi.param();
    const double q = p / (p - 1.0);
    ConjugateResult result{YoungFunction::power_over_p(q), {}, spec.x_cap,
                           true};
    return result;
  }
  return conjugate_tabulated(phi, spec);
}

}  // namespace orlicz
