#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

// Log-spaced evaluation window used by the growth-condition checks.
// Structurally invalid windows throw; windows that are valid but too small
// to certify anything yield Undetermined from the checks instead.
struct LogGrid {
  double lo = 1e-3;
  double hi = 1e3;
  int points = 97;

  double decades() const;
  bool structurally_valid() const;
  // True when the grid meets the adequacy bar for growth certificates:
  // at least 64 points spanning at least 6 decades.
  bool adequate() const;
  std::vector<double> sample() const;
};

enum class YoungFamily { Power, PowerOverP, ExpMinusOne, PLog, Table };

const char* to_string(YoungFamily f);

// A Young function from the restricted class: finite, continuous, strictly
// increasing on [0, inf), Phi(0) = 0 and Phi(x) > 0 for x > 0, so the
// inverse is single-valued. Immutable; copies share the underlying data.
class YoungFunction {
 public:
  static YoungFunction power(double p);           // x^p, p >= 1
  static YoungFunction power_over_p(double p);    // x^p / p, p > 1
  static YoungFunction exp_minus_one();           // e^x - 1
  static YoungFunction p_log(double p);           // x^p * log(1 + x), p >= 1
  // Tabulated function: nodes (xs[i], ys[i]) with xs strictly increasing
  // and positive, ys nonnegative and increasing. An implied (0, 0) node is
  // prepended; between nodes values interpolate linearly in x, above the
  // last node the final chord slope extends linearly. With strict = true
  // (the restricted class) ys must be strictly increasing and positive;
  // strict = false admits flat-zero initial segments (numeric conjugates).
  static YoungFunction table(std::vector<double> xs, std::vector<double> ys,
                             bool strict = true);

  double operator()(double x) const;  // x < 0 rejected
  double inverse(double y) const;     // y < 0 rejected; exact on nodes

  YoungFamily family() const;
  double param() const;  // p for parametric families, NaN otherwise
  // True iff the function is in the restricted class (Phi(x) > 0 for x > 0).
  bool strictly_positive() const;

  // Table data window; parametric families report has_bounded_data() false.
  bool has_bounded_data() const;
  double data_min() const;
  double data_max() const;

 private:
  struct Impl;
  explicit YoungFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Certificate for a growth condition (Delta2 or Delta'). When the verdict
// is Holds, (K, x0) witness the inequality for all x >= x0 with closed_form
// telling whether the constant came from analysis or from the grid. When it
// Fails, counterexample holds (x, ratio) pairs exceeding every candidate
// constant on the window.
struct GrowthCertificate {
  Status verdict = Status::Undetermined;
  double K = 0.0;
  double x0 = 0.0;
  bool closed_form = false;
  std::vector<std::pair<double, double>> counterexample;
  LogGrid window;
  std::string note;
};

using Delta2Certificate = GrowthCertificate;
using DeltaPrimeCertificate = GrowthCertificate;

// Delta2: exists K, x0 with Phi(2x) <= K * Phi(x) for x >= x0.
Delta2Certificate check_delta2(const YoungFunction& phi, const LogGrid& window);

// Delta': exists c, x0 with Phi(x*y) <= c * Phi(x) * Phi(y) for x, y >= x0.
// Delta' implies Delta2 (take y = 2 once x0 >= 2, adjusting constants).
DeltaPrimeCertificate check_delta_prime(const YoungFunction& phi,
                                        const LogGrid& window);

struct ConjugateSpec {
  double y_lo = 1e-6;
  double y_hi = 1e6;
  int points_per_decade = 96;
  double x_cap = 1e8;  // sup over x is searched on [0, x_cap]
};

struct ConjugateResult {
  YoungFunction psi;
  // Grid ordinates where the supremum was still increasing at x_cap; the
  // table value there is a lower bound, recorded rather than hidden.
  std::vector<double> undetermined_ys;
  double x_cap = 0.0;
  bool closed_form = false;
};

// Conjugate Psi(y) = sup_{x >= 0} (x*y - Phi(x)). Uses the closed form for
// power_over_p (the conjugate pair x^p/p <-> y^q/q, 1/p + 1/q = 1) and
// numeric tabulation otherwise.
ConjugateResult conjugate(const YoungFunction& phi,
                          const ConjugateSpec& spec = {});

// Numeric tabulation path regardless of family (testing hook).
ConjugateResult conjugate_tabulated(const YoungFunction& phi,
                                    const ConjugateSpec& spec = {});

}  // namespace orlicz
