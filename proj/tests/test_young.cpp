#include "orlicz/young.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace orlicz;

namespace {

std::vector<YoungFunction> builtin_families() {
  return {YoungFunction::power(1.5), YoungFunction::power(2.0),
          YoungFunction::power(3.0), YoungFunction::power_over_p(2.0),
          YoungFunction::power_over_p(3.0), YoungFunction::exp_minus_one(),
          YoungFunction::p_log(1.0), YoungFunction::p_log(2.0)};
}

}  // namespace

TEST_CASE("evaluation closed forms") {
  CHECK(YoungFunction::power(2.0)(3.0) == doctest::Approx(9.0));
  CHECK(YoungFunction::exp_minus_one()(1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0));
  for (const auto& phi : builtin_families()) CHECK(phi(0.0) == 0.0);
  CHECK_THROWS_AS(YoungFunction::power(2.0)(-1.0), std::invalid_argument);
}

TEST_CASE("inverse closed forms and bisection") {
  CHECK(YoungFunction::power(2.0).inverse(9.0) == doctest::Approx(3.0));
  CHECK(YoungFunction::power(2.0).inverse(0.0) == 0.0);
  CHECK(YoungFunction::exp_minus_one().inverse(1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("inverse round trip and monotonicity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logy(-6.0, 6.0);
  for (const auto& phi : builtin_families()) {
    double prev = 0.0;
    std::vector<double> ys;
    for (int i = 0; i < 200; ++i) ys.push_back(std::pow(10.0, logy(rng)));
    std::sort(ys.begin(), ys.end());
    for (double y : ys) {
      const double x = phi.inverse(y);
      CHECK(phi(x) == doctest::Approx(y).epsilon(1e-10));
      CHECK(x >= prev);
      prev = x;
    }
  }
}

TEST_CASE("conjugate of power_over_p is the dual exponent") {
  // x^2/2 is self-conjugate.
  const auto self = conjugate(YoungFunction::power_over_p(2.0));
  CHECK(self.closed_form);
  for (double y : {0.5, 1.0, 2.0, 7.0})
    CHECK(self.psi(y) == doctest::Approx(y * y / 2.0).epsilon(1e-12));

  // p = 3 pairs with q = 3/2; closed form must match a pure grid transform
  // at the grid nodes (the table is exact there, chordal in between).
  const auto closed = conjugate(YoungFunction::power_over_p(3.0));
  CHECK(closed.closed_form);
  ConjugateSpec narrow{1e-2, 1e2, 96, 1e8};
  const auto gridded =
      conjugate_tabulated(YoungFunction::power_over_p(3.0), narrow);
  CHECK_FALSE(gridded.closed_form);
  double worst = 0.0;
  for (double y : LogGrid{narrow.y_lo, narrow.y_hi, 4 * 96 + 1}.sample()) {
    const double exact = std::pow(y, 1.5) / 1.5;
    CHECK(closed.psi(y) == doctest::Approx(exact).epsilon(1e-12));
    worst = std::max(worst, std::abs(gridded.psi(y) - exact));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("biconjugation returns the original on the grid") {
  for (double p : {2.0, 3.0}) {
    const auto phi = YoungFunction::power_over_p(p);
    const auto psi = conjugate(phi).psi;
    ConjugateSpec narrow{1e-2, 1e2, 96, 1e8};
    const auto back = conjugate_tabulated(psi, narrow);
    for (double x : LogGrid{narrow.y_lo, narrow.y_hi, 4 * 96 + 1}.sample())
      CHECK(back.psi(x) == doctest::Approx(phi(x)).epsilon(1e-9));
  }
}

TEST_CASE("conjugate of the exponential family survives overflow") {
  // x*y - (e^x - 1) is -inf over most of the default [0, 1e8] search
  // bracket; the maximizer has to shrink toward the finite side. Closed
  // form: psi(y) = y log y - y + 1 for y >= 1, zero below.
  const auto conj = conjugate(YoungFunction::exp_minus_one());
  CHECK_FALSE(conj.closed_form);
  CHECK(conj.undetermined_ys.empty());
  CHECK(conj.psi(1e-3) == doctest::Approx(0.0).epsilon(1e-12));
  for (double y : {2.0, 10.0, 100.0, 1e4, 1e5}) {
    const double exact = y * std::log(y) - y + 1.0;
    CHECK(conj.psi(y) == doctest::Approx(exact).epsilon(1e-3));
  }
}

TEST_CASE("young inequality against the conjugate") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lg(-2.0, 2.0);
  for (const auto& phi :
       {YoungFunction::power_over_p(2.0), YoungFunction::power_over_p(3.0),
        YoungFunction::power(2.0)}) {
    const auto psi = conjugate(phi).psi;
    for (int i = 0; i < 400; ++i) {
      const double x = std::pow(10.0, lg(rng));
      const double y = std::pow(10.0, lg(rng));
      CHECK(x * y <= phi(x) + psi(y) + 1e-9);
    }
  }
}

TEST_CASE("delta2 certificates") {
  const LogGrid window{};
  for (double p : {1.5, 2.0, 3.0}) {
    const auto cert = check_delta2(YoungFunction::power(p), window);
    CHECK(cert.verdict == Status::Holds);
    CHECK(cert.K == doctest::Approx(std::pow(2.0, p)));
    CHECK(cert.x0 == 0.0);
    CHECK(cert.closed_form);
  }
  const auto exp_cert = check_delta2(YoungFunction::exp_minus_one(), window);
  CHECK(exp_cert.verdict == Status::Fails);
  CHECK_FALSE(exp_cert.counterexample.empty());

  // Data confined to one decade cannot certify either way.
  const auto tbl = YoungFunction::table({1.0, 1.5, 2.0}, {1.0, 2.5, 5.0});
  const auto narrow = check_delta2(tbl, LogGrid{1.0, 2.0, 64});
  CHECK(narrow.verdict == Status::Undetermined);
}

TEST_CASE("delta prime certificates") {
  const LogGrid window{};
  const auto power = check_delta_prime(YoungFunction::power(2.0), window);
  CHECK(power.verdict == Status::Holds);
  CHECK(power.K == doctest::Approx(1.0));
  CHECK(power.closed_form);

  const auto exp_cert =
      check_delta_prime(YoungFunction::exp_minus_one(), window);
  CHECK(exp_cert.verdict == Status::Fails);

  const auto one_point = check_delta_prime(YoungFunction::exp_minus_one(),
                                           LogGrid{1.0, 1.0, 1});
  CHECK(one_point.verdict == Status::Undetermined);
}

TEST_CASE("delta prime holds implies delta2 holds on the same window") {
  const LogGrid window{};
  for (const auto& phi : builtin_families()) {
    const auto dp = check_delta_prime(phi, window);
    if (dp.verdict != Status::Holds) continue;
    CHECK(check_delta2(phi, window).verdict == Status::Holds);
  }
}

TEST_CASE("midpoint convexity on a grid") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> lg(-3.0, 2.0);
  for (const auto& phi : builtin_families()) {
    for (int i = 0; i < 300; ++i) {
      const double x = std::pow(10.0, lg(rng));
      const double y = std::pow(10.0, lg(rng));
      const double mid = phi(0.5 * (x + y));
      CHECK(mid <= 0.5 * (phi(x) + phi(y)) + 1e-12 * (1.0 + mid));
    }
  }
}

TEST_CASE("family metadata") {
  CHECK(YoungFunction::power(2.0).family() == YoungFamily::Power);
  CHECK(YoungFunction::power(2.5).param() == doctest::Approx(2.5));
  CHECK(std::isnan(YoungFunction::exp_minus_one().param()));
  for (const auto& phi : builtin_families()) CHECK(phi.strictly_positive());
  CHECK_FALSE(YoungFunction::power(2.0).has_bounded_data());
  const auto tbl = YoungFunction::table({1.0, 2.0, 4.0}, {1.0, 3.0, 9.0});
  CHECK(tbl.has_bounded_data());
  CHECK(tbl.data_min() == doctest::Approx(1.0));
  CHECK(tbl.data_max() == doctest::Approx(4.0));
  CHECK_THROWS_AS(YoungFunction::power(0.5), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::power_over_p(1.0), std::invalid_argument);
}
