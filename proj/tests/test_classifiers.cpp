#include "orlicz/classifiers.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "orlicz/common.hpp"
#include "orlicz/dissipative.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/system.hpp"
#include "orlicz/transform.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

CompositionSystem geometric_system(double r, double p = 2.0) {
  return CompositionSystem(AtomicMeasureSpace::geometric(r, -64, 64),
                           AtomTransformation::shift(1),
                           YoungFunction::power(p));
}

CompositionSystem two_sided_system(double p = 2.0) {
  return CompositionSystem(AtomicMeasureSpace::two_sided_exp(2.0, -64, 64),
                           AtomTransformation::shift(1),
                           YoungFunction::power(p));
}

DissipativeStructure structure_of(const CompositionSystem& sys) {
  DissipativeStructure::Spec spec;
  spec.W = {0};
  return DissipativeStructure(sys, spec);
}

// Flat table with undeclared tails: nothing off-window is knowable.
CompositionSystem no_tail_system() {
  std::map<long, double> w;
  for (long i = -20; i <= 20; ++i) w[i] = 1.0;
  return CompositionSystem(
      AtomicMeasureSpace::table(w, TailModel::none(), TailModel::none()),
      AtomTransformation::shift(1), YoungFunction::power(2.0));
}

// Weights oscillate 1,2,1,2,... so backward measures cycle instead of
// diverging.
CompositionSystem oscillating_system() {
  std::map<long, double> w;
  for (long i = -16; i <= 16; ++i) w[i] = (i % 2 == 0) ? 1.0 : 2.0;
  return CompositionSystem(
      AtomicMeasureSpace::table(w, TailModel::periodic(2),
                                TailModel::periodic(2)),
      AtomTransformation::shift(1), YoungFunction::power(2.0));
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("general positive expansivity") {
  const auto decaying = positively_expansive_general(geometric_system(0.5));
  CHECK(decaying.criterion == "Thm 2.7(1)");
  CHECK(decaying.status == Status::Holds);

  const auto growing = positively_expansive_general(geometric_system(2.0));
  CHECK(growing.status == Status::Fails);
  REQUIRE(growing.witness.has_value());
  CHECK(growing.witness_kind == "atom");
  CHECK(growing.tail_model == "geometric(0.5)");

  CHECK(positively_expansive_general(geometric_system(1.0)).status ==
        Status::Fails);
  CHECK(positively_expansive_general(two_sided_system()).status ==
        Status::Holds);

  const auto identity = CompositionSystem(
      AtomicMeasureSpace::geometric(0.5, -64, 64), AtomTransformation::shift(0),
      YoungFunction::power(2.0));
  CHECK(positively_expansive_general(identity).status == Status::Fails);
}

TEST_CASE("general expansivity") {
  CHECK(expansive_general(geometric_system(0.5)).status == Status::Holds);
  CHECK(expansive_general(geometric_system(2.0)).status == Status::Holds);
  CHECK(expansive_general(two_sided_system()).status == Status::Holds);

  const auto flat = expansive_general(geometric_system(1.0));
  CHECK(flat.criterion == "Thm 2.7(2)");
  CHECK(flat.status == Status::Fails);
  CHECK(flat.witness.has_value());
}

TEST_CASE("dissipative classifiers mirror the general ones") {
  for (double r : {0.5, 1.0, 2.0}) {
    const auto sys = geometric_system(r);
    const auto st = structure_of(sys);
    CHECK(positively_expansive_dissipative(st).status ==
          positively_expansive_general(sys).status);
    CHECK(expansive_dissipative(st).status == expansive_general(sys).status);
  }
  const auto sys = two_sided_system();
  const auto st = structure_of(sys);
  CHECK(positively_expansive_dissipative(st).status == Status::Holds);
  CHECK(expansive_dissipative(st).status == Status::Holds);
  CHECK(positively_expansive_dissipative(st).criterion == "Thm 2.8(1)");
  CHECK(expansive_dissipative(st).criterion == "Thm 2.8(2)");
}

TEST_CASE("uniform expansivity tags the decisive condition") {
  const auto delta2 = check_delta2(YoungFunction::power(2.0), LogGrid{});
  REQUIRE(delta2.verdict == Status::Holds);

  const auto fwd = uniformly_expansive_dissipative(
      structure_of(geometric_system(0.5)), delta2);
  CHECK(fwd.criterion == "Thm 2.8(4)/(2.6)");
  CHECK(fwd.status == Status::Holds);
  REQUIRE(fwd.values.size() == 2);
  CHECK(fwd.values[0] == doctest::Approx(kInvSqrt2));  // left a-ratio
  CHECK(fwd.values[1] == doctest::Approx(kSqrt2));     // right a-ratio

  const auto bwd = uniformly_expansive_dissipative(
      structure_of(geometric_system(2.0)), delta2);
  CHECK(bwd.criterion == "Thm 2.8(4)/(2.7)");
  CHECK(bwd.status == Status::Holds);

  const auto pit = uniformly_expansive_dissipative(
      structure_of(two_sided_system()), delta2);
  CHECK(pit.criterion == "Thm 2.8(4)");
  CHECK(pit.status == Status::Fails);
  CHECK(pit.note == "conditions (2.6), (2.7) and (2.8) all fail");
}

TEST_CASE("uniform positive expansivity") {
  const auto delta2 = check_delta2(YoungFunction::power(2.0), LogGrid{});
  CHECK(uniformly_positively_expansive_dissipative(
            structure_of(geometric_system(0.5)), delta2)
            .status == Status::Holds);

  const auto osc = uniformly_positively_expansive_dissipative(
      structure_of(oscillating_system()), delta2);
  CHECK(osc.status == Status::Fails);
  CHECK(osc.tail_model == "periodic(2)");
}

TEST_CASE("growth certificate gates") {
  const auto st = structure_of(geometric_system(0.5));
  const auto bad = check_delta2(YoungFunction::exp_minus_one(), LogGrid{});
  REQUIRE(bad.verdict == Status::Fails);
  CHECK_THROWS_AS(uniformly_expansive_dissipative(st, bad), PreconditionError);

  const auto undecided = check_delta2(
      YoungFunction::table({1.0, 1.5, 2.0}, {1.0, 2.5, 5.0}),
      LogGrid{1.0, 2.0, 64});
  REQUIRE(undecided.verdict == Status::Undetermined);
  const auto gated = uniformly_expansive_dissipative(st, undecided);
  CHECK(gated.status == Status::Undetermined);
  CHECK(gated.note.find("not evaluated") != std::string::npos);

  const auto bad_prime =
      check_delta_prime(YoungFunction::exp_minus_one(), LogGrid{});
  REQUIRE(bad_prime.verdict == Status::Fails);
  CHECK_THROWS_AS(structural_instability(st, bad_prime), PreconditionError);
  CHECK_THROWS_AS(strong_structural_stability(st, bad_prime),
                  PreconditionError);
}

TEST_CASE("uniform heuristic over finite families") {
  const auto falsified = uniform_general_heuristic(
      geometric_system(2.0), {{0}});
  CHECK(falsified.criterion == "Thm 2.7(3)");
  CHECK(falsified.status == Status::Fails);
  REQUIRE(falsified.witness.has_value());
  CHECK(*falsified.witness == 0);
  CHECK(falsified.witness_kind == "family-index");
  CHECK(falsified.note.find("one-sided split may still expand") !=
        std::string::npos);

  CHECK_THROWS_AS(uniform_general_heuristic(geometric_system(2.0), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      uniform_general_heuristic(geometric_system(2.0), {{0}, {}}),
      std::invalid_argument);

  const auto sys = geometric_system(0.5);
  const auto st = structure_of(sys);
  const auto delegated =
      uniform_general_heuristic(sys, {{0}, {3, 5}}, {}, &st);
  CHECK(delegated.criterion == "Thm 2.7(3)/(2.6)");
  CHECK(delegated.status == Status::Holds);
  CHECK(delegated.note.rfind("delegated", 0) == 0);

  const auto open = uniform_general_heuristic(sys, {{0}, {3, 5}});
  CHECK(open.status == Status::Undetermined);
  CHECK(open.note.find("cannot certify") != std::string::npos);
}

TEST_CASE("exponent estimates in closed form") {
  const auto grow = exponent_estimates(structure_of(geometric_system(2.0)));
  CHECK(grow.lambda_sup_Z.value == doctest::Approx(kInvSqrt2));
  CHECK(grow.lambda_inf_Z.value == doctest::Approx(kInvSqrt2));
  CHECK(grow.lambda_sup_N0.value == doctest::Approx(kInvSqrt2));
  CHECK(grow.lambda_inf_negN0.value == doctest::Approx(kInvSqrt2));
  CHECK(grow.dec_inf_N0.value == doctest::Approx(kSqrt2));
  REQUIRE(grow.lambda_sup_Z.closed_form.has_value());
  CHECK(grow.lambda_sup_Z.numeric_at_horizon ==
        doctest::Approx(kInvSqrt2).epsilon(1e-9));
  CHECK(grow.lambda_sup_Z.trend == "flat");
  CHECK_FALSE(grow.lambda_sup_Z.window_truncated);

  const auto decay = exponent_estimates(structure_of(geometric_system(0.5)));
  CHECK(decay.lambda_inf_Z.value == doctest::Approx(kSqrt2));

  const auto pit = exponent_estimates(structure_of(two_sided_system()));
  CHECK(pit.lambda_sup_N0.value == doctest::Approx(kInvSqrt2));
  CHECK(pit.lambda_inf_negN0.value == doctest::Approx(kSqrt2));
  CHECK(pit.lambda_sup_Z.value == doctest::Approx(kSqrt2));
  CHECK(pit.lambda_inf_Z.value == doctest::Approx(kInvSqrt2));
  CHECK(pit.lambda_sup_Z.numeric_at_horizon ==
        doctest::Approx(kSqrt2).epsilon(1e-9));

  ClassifierConfig bad;
  bad.horizon = 0;
  CHECK_THROWS_AS(
      exponent_estimates(structure_of(geometric_system(2.0)), bad),
      std::invalid_argument);
}

TEST_CASE("exponents scale as the 1/p power across Young exponents") {
  const double lambda1 =
      exponent_estimates(structure_of(geometric_system(2.0, 1.0)))
          .lambda_sup_Z.value;
  CHECK(lambda1 == doctest::Approx(0.5).epsilon(1e-12));
  for (double p : {1.5, 2.0, 3.0}) {
    const auto est =
        exponent_estimates(structure_of(geometric_system(2.0, p)));
    CHECK(est.lambda_sup_Z.value ==
          doctest::Approx(std::pow(lambda1, 1.0 / p)).epsilon(1e-6));
  }
}

TEST_CASE("verdicts are invariant in the Young exponent") {
  const auto delta2 = check_delta2(YoungFunction::power(2.0), LogGrid{});
  for (double r : {0.5, 2.0}) {
    Status pe[3], ue[3], ss[3];
    int i = 0;
    for (double p : {1.5, 2.0, 3.0}) {
      const auto st = structure_of(geometric_system(r, p));
      const auto dp = check_delta_prime(YoungFunction::power(p), LogGrid{});
      pe[i] = positively_expansive_dissipative(st).status;
      ue[i] = uniformly_expansive_dissipative(st, delta2).status;
      ss[i] = strong_structural_stability(st, dp).status;
      ++i;
    }
    for (int j = 1; j < 3; ++j) {
      CHECK(pe[j] == pe[0]);
      CHECK(ue[j] == ue[0]);
      CHECK(ss[j] == ss[0]);
    }
  }
}

TEST_CASE("exponent estimates are horizon stable on rule spaces") {
  ClassifierConfig short_cfg;
  short_cfg.horizon = 64;
  ClassifierConfig long_cfg;
  long_cfg.horizon = 128;
  const auto a =
      exponent_estimates(structure_of(geometric_system(2.0)), short_cfg);
  const auto b =
      exponent_estimates(structure_of(geometric_system(2.0)), long_cfg);
  CHECK(a.lambda_sup_Z.value == doctest::Approx(b.lambda_sup_Z.value));
  CHECK(a.lambda_sup_Z.numeric_at_horizon ==
        doctest::Approx(b.lambda_sup_Z.numeric_at_horizon).epsilon(1e-12));
}

TEST_CASE("structural instability sufficient condition") {
  const auto dp = check_delta_prime(YoungFunction::power(2.0), LogGrid{});
  REQUIRE(dp.verdict == Status::Holds);

  const auto pit = structural_instability(structure_of(two_sided_system()), dp);
  CHECK(pit.criterion == "Prop 2.9");
  CHECK(pit.status == Status::Holds);
  REQUIRE(pit.values.size() == 2);
  CHECK(pit.values[0] == doctest::Approx(kInvSqrt2).epsilon(1e-3));
  CHECK(pit.values[1] == doctest::Approx(kSqrt2).epsilon(1e-3));

  const auto grow = structural_instability(structure_of(geometric_system(2.0)),
                                           dp);
  CHECK(grow.status == Status::Undetermined);
  CHECK(grow.note.find("sufficient only") != std::string::npos);
}

TEST_CASE("strong structural stability tags") {
  const auto dp = check_delta_prime(YoungFunction::power(2.0), LogGrid{});

  const auto grow =
      strong_structural_stability(structure_of(geometric_system(2.0)), dp);
  CHECK(grow.criterion == "Thm 2.10/(2.9)");
  CHECK(grow.status == Status::Holds);

  const auto decay =
      strong_structural_stability(structure_of(geometric_system(0.5)), dp);
  CHECK(decay.criterion == "Thm 2.10/(2.10)");
  CHECK(decay.status == Status::Holds);

  const auto pit =
      strong_structural_stability(structure_of(two_sided_system()), dp);
  CHECK(pit.criterion == "Thm 2.10");
  CHECK(pit.status == Status::Undetermined);
}

TEST_CASE("shadowing equivalence report") {
  const auto dp = check_delta_prime(YoungFunction::power(2.0), LogGrid{});

  const auto stable =
      shadowing_equivalence_report(structure_of(geometric_system(0.5)), dp);
  CHECK(stable.hypothesis.status == Status::Holds);
  CHECK(stable.stability.status == Status::Holds);
  CHECK(stable.stability.criterion == "Thm 2.10/(2.10)");
  CHECK(stable.instability.status == Status::Undetermined);
  REQUIRE(stable.implications.size() == 2);
  CHECK(stable.implications[0].find("equivalent to strong structural "
                                    "stability") != std::string::npos);
  CHECK(stable.implications[1].find("shadowing holds") != std::string::npos);

  const auto inapplicable =
      shadowing_equivalence_report(structure_of(geometric_system(2.0)), dp);
  CHECK(inapplicable.hypothesis.status == Status::Fails);
  CHECK(inapplicable.stability.status == Status::Holds);
  CHECK(inapplicable.implications[1].find("does not apply") !=
        std::string::npos);

  const auto unstable =
      shadowing_equivalence_report(structure_of(two_sided_system()), dp);
  CHECK(unstable.hypothesis.status == Status::Holds);
  CHECK(unstable.instability.status == Status::Holds);
  CHECK(unstable.implications[1].find("shadowing fails") != std::string::npos);
}

TEST_CASE("undeclared tails stay undetermined at every horizon") {
  const auto sys = no_tail_system();
  const auto st = structure_of(sys);
  const auto delta2 = check_delta2(YoungFunction::power(2.0), LogGrid{});
  const auto dp = check_delta_prime(YoungFunction::power(2.0), LogGrid{});

  for (long horizon : {256L, 512L}) {
    ClassifierConfig cfg;
    cfg.horizon = horizon;
    CHECK(positively_expansive_dissipative(st, cfg).status ==
          Status::Undetermined);
    CHECK(expansive_dissipative(st, cfg).status == Status::Undetermined);
    CHECK(uniformly_expansive_dissipative(st, delta2, cfg).status ==
          Status::Undetermined);
    CHECK(structural_instability(st, dp, cfg).status == Status::Undetermined);
    CHECK(strong_structural_stability(st, dp, cfg).status ==
          Status::Undetermined);
  }

  const auto est = exponent_estimates(st);
  CHECK(est.lambda_sup_Z.window_truncated);
  CHECK_FALSE(est.lambda_sup_Z.closed_form.has_value());
  CHECK_FALSE(est.lambda_inf_negN0.closed_form.has_value());
}

TEST_CASE("uniform expansivity implies expansivity where certified") {
  const auto delta2 = check_delta2(YoungFunction::power(2.0), LogGrid{});
  for (double r : {0.5, 2.0}) {
    const auto st = structure_of(geometric_system(r));
    const auto ue = uniformly_expansive_dissipative(st, delta2);
    REQUIRE(ue.status == Status::Holds);
    CHECK(expansive_dissipative(st).status == Status::Holds);
  }
}
