#include "orlicz/system.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "orlicz/measure.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

CompositionSystem geometric_system(double r, long step = 1, double p = 2.0) {
  return CompositionSystem(AtomicMeasureSpace::geometric(r, -64, 64),
                           AtomTransformation::shift(step),
                           YoungFunction::power(p));
}

// Super-exponentially decaying weights: preimage ratios under a +1 shift
// grow without bound toward the right edge.
AtomicMeasureSpace runaway_table() {
  std::map<long, double> w;
  for (long i = 0; i <= 7; ++i)
    w[i] = std::pow(10.0, -0.5 * static_cast<double>(i * (i - 1)));
  return AtomicMeasureSpace::table(w, TailModel::none(),
                                   TailModel::monotone_decreasing());
}

}  // namespace

TEST_CASE("boundedness closed forms") {
  const auto half = geometric_system(0.5);
  CHECK(half.bounds().forward.verdict ==
        BoundednessCertificate::Verdict::Bounded);
  CHECK(half.bounds().forward.c == doctest::Approx(2.0));
  CHECK(half.bounds().forward.closed_form);
  CHECK(half.bounds().inverse.c == doctest::Approx(0.5));
  CHECK(half.invertible_bounded());

  const auto id = geometric_system(0.5, 0);
  CHECK(id.bounds().forward.c == doctest::Approx(1.0));
  CHECK(id.bounds().inverse.c == doctest::Approx(1.0));

  const auto two_sided = CompositionSystem(
      AtomicMeasureSpace::two_sided_exp(2.0, -32, 32),
      AtomTransformation::shift(1), YoungFunction::power(2.0));
  CHECK(two_sided.bounds().forward.c == doctest::Approx(2.0));
  CHECK(two_sided.bounds().inverse.c == doctest::Approx(2.0));
}

TEST_CASE("boundedness evidence verdicts on tables") {
  const auto runaway = boundedness_check(runaway_table(),
                                         AtomTransformation::shift(1));
  CHECK(runaway.forward.verdict ==
        BoundednessCertificate::Verdict::UnboundedEvidence);

  const auto opaque = AtomicMeasureSpace::table(
      {{0, 1.0}, {1, 2.0}, {2, 1.0}}, TailModel::none(), TailModel::none());
  const auto undetermined =
      boundedness_check(opaque, AtomTransformation::shift(1));
  CHECK(undetermined.forward.verdict ==
        BoundednessCertificate::Verdict::Undetermined);

  // Reject tables confine the dynamics, so the window sup is global.
  const auto rot = AtomTransformation::table(
      {{0, 1}, {1, 2}, {2, 0}}, AtomTransformation::OffWindow::Reject);
  const auto confined = boundedness_check(opaque, rot);
  CHECK(confined.forward.verdict ==
        BoundednessCertificate::Verdict::Bounded);
  CHECK(confined.forward.c == doctest::Approx(2.0));
}

TEST_CASE("compose power moves support backward") {
  const auto sys = geometric_system(0.5);
  const auto f = SimpleFunction::indicator({0});
  const auto g = compose_power(sys, f, 2);
  CHECK(g.support() == std::vector<long>{-2});
  CHECK(g.at(-2) == 1.0);
  const auto same = compose_power(sys, f, 0);
  CHECK(same.coefficients() == f.coefficients());
  const auto back = compose_power(sys, f, -1);
  CHECK(back.support() == std::vector<long>{1});

  const auto bounded = CompositionSystem(runaway_table(),
                                         AtomTransformation::shift(1),
                                         YoungFunction::power(2.0));
  CHECK_THROWS_AS(compose_power(bounded, SimpleFunction::indicator({0}), -20),
                  std::out_of_range);
}

TEST_CASE("compose power is additive in the exponent") {
  std::mt19937 rng(31);
  const auto sys = geometric_system(0.5);
  std::uniform_int_distribution<long> atom(-10, 10);
  std::uniform_int_distribution<long> n(-6, 6);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    SimpleFunction f;
    for (int j = 0; j < 4; ++j) f.set(atom(rng), coef(rng));
    if (f.empty()) continue;
    const long a = n(rng), b = n(rng);
    const auto two_step = compose_power(sys, compose_power(sys, f, a), b);
    const auto one_step = compose_power(sys, f, a + b);
    CHECK(two_step.coefficients() == one_step.coefficients());
  }
}

TEST_CASE("orbit gauge norms closed forms") {
  const auto f = SimpleFunction::indicator({0});
  const auto growing = orbit_gauge_norms(geometric_system(0.5), f, 0, 10);
  for (const auto& [n, value] : growing)
    CHECK(value ==
          doctest::Approx(std::pow(2.0, 0.5 * static_cast<double>(n)))
              .epsilon(1e-10));

  const auto constant = orbit_gauge_norms(geometric_system(0.5, 0), f, 0, 10);
  for (const auto& [n, value] : constant)
    CHECK(value == doctest::Approx(1.0).epsilon(1e-10));

  const auto shrinking = orbit_gauge_norms(geometric_system(2.0), f, 0, 10);
  for (const auto& [n, value] : shrinking)
    CHECK(value ==
          doctest::Approx(std::pow(2.0, -0.5 * static_cast<double>(n)))
              .epsilon(1e-10));

  CHECK_THROWS_AS(orbit_gauge_norms(geometric_system(0.5), SimpleFunction{},
                                    0, 4),
                  std::invalid_argument);
}

TEST_CASE("orbit norms match transported indicator norms") {
  const auto sys = geometric_system(0.5);
  const auto f = SimpleFunction::indicator({3, 5});
  const auto orbit = orbit_gauge_norms(sys, f, -6, 6);
  for (const auto& [n, value] : orbit) {
    const double direct = indicator_norm(sys.space(), sys.phi(),
                                         {3 - n, 5 - n});
    CHECK(value == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("certificate constant bounds single-step norm growth") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<long> atom(-12, 12);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  for (double r : {0.5, 2.0, 1.0}) {
    const auto sys = geometric_system(r);
    const double c = std::max(sys.bounds().forward.c, 1.0);
    for (int i = 0; i < 40; ++i) {
      SimpleFunction f;
      for (int j = 0; j < 5; ++j) f.set(atom(rng), coef(rng));
      if (f.empty()) continue;
      const double before = gauge_norm(sys.space(), sys.phi(), f);
      const double after =
          gauge_norm(sys.space(), sys.phi(), compose_power(sys, f, 1));
      CHECK(after <= c * before + 1e-9);
    }
  }
}

TEST_CASE("expansivity probe aggregates") {
  ProbeConfig cfg;
  cfg.samples = 16;
  cfg.horizon = 20;
  cfg.threshold = 100.0;

  const auto report = expansivity_probe(geometric_system(0.5), cfg);
  CHECK(report.samples.size() == 16);
  CHECK(report.count_exceeding == 16);
  CHECK(report.count_exceeding_forward == 16);
  CHECK(report.min_sup > cfg.threshold);
  CHECK_FALSE(report.any_truncated);
  for (const auto& s : report.samples) {
    CHECK(s.sup_two_sided >= s.sup_forward - 1e-12);
    CHECK(s.exceeds_two_sided);
  }

  ProbeConfig small = cfg;
  small.threshold = 10.0;
  const auto id_report = expansivity_probe(geometric_system(0.5, 0), small);
  CHECK(id_report.count_exceeding == 0);
  CHECK(id_report.min_sup == doctest::Approx(1.0).epsilon(1e-9));

  const auto flat_report = expansivity_probe(geometric_system(1.0), small);
  CHECK(flat_report.count_exceeding == 0);
  for (const auto& s : flat_report.samples)
    CHECK(s.sup_two_sided == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("probe is deterministic for a fixed seed") {
  ProbeConfig cfg;
  cfg.samples = 8;
  cfg.horizon = 10;
  const auto sys = geometric_system(0.5);
  const auto a = expansivity_probe(sys, cfg);
  const auto b = expansivity_probe(sys, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  CHECK(a.min_sup == b.min_sup);
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].sup_two_sided == b.samples[i].sup_two_sided);
    CHECK(a.samples[i].f.coefficients() == b.samples[i].f.coefficients());
  }

  ProbeConfig other = cfg;
  other.seed = cfg.seed + 1;
  const auto c = expansivity_probe(sys, other);
  bool any_different = false;
  for (size_t i = 0; i < c.samples.size(); ++i)
    any_different = any_different ||
                    c.samples[i].f.coefficients() !=
                        a.samples[i].f.coefficients();
  CHECK(any_different);
}

TEST_CASE("probe marks truncated orbits on bounded tables") {
  std::map<long, double> w;
  for (long i = -4; i <= 4; ++i) w[i] = 1.0;
  const auto space = AtomicMeasureSpace::table(w, TailModel::none(),
                                               TailModel::none());
  const auto sys = CompositionSystem(space, AtomTransformation::shift(1),
                                     YoungFunction::power(2.0));
  ProbeConfig cfg;
  cfg.samples = 8;
  cfg.horizon = 20;
  cfg.window_lo = -4;
  cfg.window_hi = 4;
  cfg.max_support = 3;
  const auto report = expansivity_probe(sys, cfg);
  CHECK(report.any_truncated);
  for (const auto& s : report.samples) CHECK(s.truncated);
}
