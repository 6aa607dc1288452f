#include "orlicz/dissipative.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "orlicz/common.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/system.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

CompositionSystem shift_system(double r, long step = 1, double p = 2.0) {
  return CompositionSystem(AtomicMeasureSpace::geometric(r, -64, 64),
                           AtomTransformation::shift(step),
                           YoungFunction::power(p));
}

// w(2k) = r^k * u0, w(2k+1) = r^k * u1: blocks scale uniformly, so every
// subset of a block distorts identically.
CompositionSystem block_system(double r, double u0, double u1) {
  std::map<long, double> w;
  for (long k = -8; k <= 8; ++k) {
    w[2 * k] = std::pow(r, static_cast<double>(k)) * u0;
    w[2 * k + 1] = std::pow(r, static_cast<double>(k)) * u1;
  }
  const auto space = AtomicMeasureSpace::table(
      w, TailModel::geometric_residues({1.0 / r, 1.0 / r}),
      TailModel::geometric_residues({r, r}));
  return CompositionSystem(space, AtomTransformation::shift(2),
                           YoungFunction::power(2.0));
}

// w(2k) = r^k, w(2k+1) = s^k with r != s: single-atom subsets of W = {0, 1}
// drift apart, so no finite distortion constant exists.
CompositionSystem mismatched_system(double r, double s) {
  std::map<long, double> w;
  for (long k = -8; k <= 8; ++k) {
    w[2 * k] = std::pow(r, static_cast<double>(k));
    w[2 * k + 1] = std::pow(s, static_cast<double>(k));
  }
  const auto space = AtomicMeasureSpace::table(
      w, TailModel::geometric_residues({1.0 / r, 1.0 / s}),
      TailModel::geometric_residues({r, s}));
  return CompositionSystem(space, AtomTransformation::shift(2),
                           YoungFunction::power(2.0));
}

}  // namespace

TEST_CASE("verify dissipative shift closed forms") {
  const auto sys = shift_system(0.5);
  const auto ok = verify_dissipative(sys, {0}, 16);
  CHECK(ok.status == Status::Holds);
  CHECK(ok.closed_form);

  const auto gap = verify_dissipative(shift_system(0.5, 2), {0}, 16);
  CHECK(gap.status == Status::Fails);
  REQUIRE(gap.witness.has_value());
  CHECK(*gap.witness % 2 != 0);  // an uncovered odd atom

  const auto paired = verify_dissipative(shift_system(0.5, 2), {0, 1}, 16);
  CHECK(paired.status == Status::Holds);

  const auto id = verify_dissipative(shift_system(0.5, 0), {0}, 16);
  CHECK(id.status == Status::Fails);

  const auto dup = verify_dissipative(shift_system(0.5, 2), {0, 2}, 16);
  CHECK(dup.status == Status::Fails);

  CHECK_THROWS_AS(verify_dissipative(sys, {}, 16), std::invalid_argument);
}

TEST_CASE("wandering check drops the coverage requirement") {
  CHECK(wandering_check(shift_system(0.5), {0}, 16).status == Status::Holds);
  CHECK(wandering_check(shift_system(0.5, 0), {0}, 16).status ==
        Status::Fails);
  CHECK(wandering_check(shift_system(0.5, 2), {0, 1}, 16).status ==
        Status::Holds);
  // Coverage failure is not a wandering failure.
  CHECK(wandering_check(shift_system(0.5, 2), {0}, 16).status ==
        Status::Holds);
}

TEST_CASE("verify dissipative on tables") {
  std::map<long, double> w = {{0, 1.0}, {1, 2.0}, {2, 4.0}};
  const auto tiny = AtomicMeasureSpace::table(w, TailModel::none(),
                                              TailModel::none());
  const auto rot = AtomTransformation::table(
      {{0, 1}, {1, 2}, {2, 0}}, AtomTransformation::OffWindow::Reject);
  const auto sys = CompositionSystem(tiny, rot, YoungFunction::power(2.0));

  // The orbit of {0} revisits it after three steps.
  const auto cycled = verify_dissipative(sys, {0}, 8);
  CHECK(cycled.status == Status::Fails);

  // A window too small to see any overlap stays honest.
  const auto shallow = verify_dissipative(sys, {0}, 1);
  CHECK(shallow.status == Status::Undetermined);

  // Extend-by-shift rearrangement: 0 -> 2 -> 1 -> 3, pure shift beyond.
  const auto rearranged = AtomTransformation::table(
      {{0, 2}, {1, 3}, {2, 1}}, AtomTransformation::OffWindow::ExtendByShift,
      1);
  const auto geo = AtomicMeasureSpace::geometric(0.5, -64, 64);
  const auto esys = CompositionSystem(geo, rearranged,
                                      YoungFunction::power(2.0));
  CHECK(verify_dissipative(esys, {0}, 16).status == Status::Holds);

  // A fixed point of the rearrangement is never covered from W = {0}.
  const auto pinned = AtomTransformation::table(
      {{0, 2}, {1, 1}, {2, 3}}, AtomTransformation::OffWindow::ExtendByShift,
      1);
  const auto psys = CompositionSystem(geo, pinned, YoungFunction::power(2.0));
  const auto uncovered = verify_dissipative(psys, {0}, 16);
  CHECK(uncovered.status == Status::Fails);
  REQUIRE(uncovered.witness.has_value());
  CHECK(*uncovered.witness == 1);
}

TEST_CASE("distortion constant evidence") {
  SubsetSpec spec;

  const auto singleton = distortion_constant(shift_system(0.5), {0}, 8, spec);
  CHECK(singleton.K_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(singleton.exhaustive);
  CHECK(singleton.evidence_subsets == 1);

  const auto block = distortion_constant(block_system(0.5, 1.0, 3.0), {0, 1},
                                         6, spec);
  CHECK(block.K_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(block.exhaustive);
  CHECK(block.evidence_subsets == 3);

  // Mismatched ratios: evidence grows without bound as the window doubles.
  const auto sys = mismatched_system(0.5, 0.25);
  double prev = 1.0;
  for (long range : {2L, 4L, 8L}) {
    const auto est = distortion_constant(sys, {0, 1}, range, spec);
    CHECK(est.K_hat > prev * 1.5);
    prev = est.K_hat;
  }
}

TEST_CASE("generalized distortion evidence") {
  SubsetSpec spec;
  const auto block = generalized_distortion(block_system(0.5, 1.0, 3.0),
                                            {0, 1}, 4, 4, spec);
  CHECK(block.H_hat == doctest::Approx(1.0).epsilon(1e-9));

  const auto singleton = generalized_distortion(shift_system(0.5), {0}, 4, 4,
                                                spec);
  CHECK(singleton.H_hat == doctest::Approx(1.0).epsilon(1e-12));

  // The H evidence can never exceed the squared K evidence on one grid.
  const auto sys = mismatched_system(0.5, 0.25);
  const auto H = generalized_distortion(sys, {0, 1}, 3, 3, spec);
  const auto K = distortion_constant(sys, {0, 1}, 6, spec);
  CHECK(H.H_hat <= K.K_hat * K.K_hat * (1.0 + 1e-9));
  CHECK(std::isfinite(H.H_hat));
}

TEST_CASE("subset evidence strategies agree at small scale") {
  const auto sys = block_system(0.5, 1.0, 2.0);
  SubsetSpec exhaustive;
  SubsetSpec sampled;
  sampled.exhaustive = false;
  sampled.sample_count = 64;
  const auto a = distortion_constant(sys, {0, 1}, 6, exhaustive);
  const auto b = distortion_constant(sys, {0, 1}, 6, sampled);
  CHECK(a.exhaustive);
  CHECK_FALSE(b.exhaustive);
  CHECK(a.K_hat == doctest::Approx(b.K_hat).epsilon(1e-12));
  CHECK(a.evidence_subsets == b.evidence_subsets);
}

TEST_CASE("distortion evidence is monotone in the window") {
  const auto sys = mismatched_system(0.5, 0.25);
  SubsetSpec spec;
  double prev = 0.0;
  for (long range = 1; range <= 6; ++range) {
    const auto est = distortion_constant(sys, {0, 1}, range, spec);
    CHECK(est.K_hat >= prev - 1e-12);
    prev = est.K_hat;
  }
}

TEST_CASE("ratio sequence closed forms") {
  const auto a = ratio_sequence(shift_system(0.5), {0}, 4);
  REQUIRE(a.size() == 9);
  CHECK(a[8] == doctest::Approx(4.0).epsilon(1e-12));   // k = 4
  CHECK(a[4] == doctest::Approx(1.0).epsilon(1e-12));   // k = 0
  CHECK(a[0] == doctest::Approx(0.25).epsilon(1e-12));  // k = -4

  const auto flat = ratio_sequence(shift_system(1.0), {0, 1}, 3);
  for (double v : flat) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto two = CompositionSystem(
      AtomicMeasureSpace::two_sided_exp(2.0, -32, 32),
      AtomTransformation::shift(1), YoungFunction::power(2.0));
  const auto b = ratio_sequence(two, {0}, 4);
  CHECK(b[2] == doctest::Approx(0.5).epsilon(1e-12));  // k = -2
}

TEST_CASE("indicator norms invert the ratio sequence") {
  for (double r : {0.5, 2.0}) {
    const auto sys = shift_system(r);
    const auto a = ratio_sequence(sys, {0, 1}, 8);
    for (long k = -8; k <= 8; ++k) {
      const double norm = indicator_norm(sys.space(), sys.phi(),
                                         {0 + k, 1 + k});
      CHECK(norm * a[static_cast<size_t>(k + 8)] ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("dissipative structure caches tails and ratios") {
  DissipativeStructure::Spec spec;
  spec.W = {0};
  spec.k_window = 32;
  const auto st = DissipativeStructure(shift_system(0.5), spec);
  CHECK(st.certificate().status == Status::Holds);
  CHECK(st.a(4) == doctest::Approx(4.0));
  CHECK(st.log_a(-4) == doctest::Approx(std::log(0.25)));

  CHECK(st.mu_tail(1).kind == SequenceTail::Kind::Geometric);
  CHECK(st.mu_tail(1).ratio == doctest::Approx(0.5));
  CHECK(st.mu_tail(-1).ratio == doctest::Approx(2.0));
  CHECK(st.a_tail(1).ratio == doctest::Approx(std::sqrt(2.0)));
  CHECK(st.a_tail(-1).ratio == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(st.a_tail(1).exact);
  CHECK_THROWS_AS(st.mu_tail(0), std::invalid_argument);

  CHECK(st.distortion().K_hat == doctest::Approx(1.0));
  CHECK(st.generalized().H_hat == doctest::Approx(1.0));

  DissipativeStructure::Spec bad = spec;
  bad.W = {0};
  CHECK_THROWS_AS(DissipativeStructure(shift_system(0.5, 2), bad),
                  PreconditionError);
}
