#include "doctest.h"
#include "qrate/errors.hpp"
#include "qrate/sepcheck.hpp"

using namespace qrate;

namespace {

ClassicalSource uniform_bit() {
  return ClassicalSource({0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}});
}

}  // namespace

TEST_CASE("theorem name round trip") {
  for (const char* name : {"T4", "T5", "T6", "T7", "T8"})
    CHECK(theorem_to_string(theorem_from_string(name)) == name);
  CHECK_THROWS_AS(theorem_from_string("T9"), InvalidParameter);
}

TEST_CASE("boundary case: maximally mixed qubit over the identity channel") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto id2 = standard_channel(ChannelKind::Identity, 0, 2);
  SeparationVerdict v = check(Theorem::T7, mm, id2);
  CHECK(v.lhs_bits == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(v.rhs_bits == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(v.feasible);
  CHECK_FALSE(v.caveat);
}

TEST_CASE("half-erasure channel cannot carry a full qubit source") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto half = standard_channel(ChannelKind::Erasure, 0.5);
  SeparationVerdict v = check(Theorem::T6, mm, half);
  CHECK(v.lhs_bits == doctest::Approx(1.0));
  CHECK(v.rhs_bits == doctest::Approx(0.0).epsilon(1e-4));
  CHECK_FALSE(v.feasible);
  CHECK(v.caveat);
}

TEST_CASE("zero-rate point over a dead channel sits exactly on the boundary") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto dep = standard_channel(ChannelKind::CompletelyDepolarizing, 0, 2);
  SeparationVerdict v = check(Theorem::T8, mm, dep, 0.75);
  CHECK(v.lhs_bits == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(v.rhs_bits == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(v.feasible);
  CHECK(std::abs(v.margin) <= 1e-6);
}

TEST_CASE("classical source checks") {
  auto id2 = standard_channel(ChannelKind::Identity, 0, 2);
  SeparationVerdict t4 = check(Theorem::T4, uniform_bit(), id2);
  CHECK(t4.lhs_bits == doctest::Approx(1.0));
  CHECK(t4.feasible);
  CHECK(t4.caveat);

  SeparationVerdict t5 = check(Theorem::T5, uniform_bit(), id2, 0.1);
  CHECK(t5.lhs_bits == doctest::Approx(0.531004).epsilon(2e-3));
  CHECK(t5.feasible);
}

TEST_CASE("feasibility is monotone in the distortion budget") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto dp = standard_channel(ChannelKind::Depolarizing, 0.3);
  bool was_feasible = false;
  for (double D : {0.1, 0.3, 0.5, 0.7}) {
    SeparationVerdict v = check(Theorem::T8, mm, dp, D);
    if (was_feasible) CHECK(v.feasible);
    was_feasible = was_feasible || v.feasible;
  }
}

TEST_CASE("input validation") {
  DensityMatrix mm = DensityMatrix::maximally_mixed(2);
  auto id2 = standard_channel(ChannelKind::Identity, 0, 2);
  CHECK_THROWS_AS(check(Theorem::T8, mm, id2), MissingDistortion);
  CHECK_THROWS_AS(check(Theorem::T7, mm, id2, 0.1), InvalidParameter);
  CHECK_THROWS_AS(check(Theorem::T4, mm, id2), SourceTypeMismatch);
  CHECK_THROWS_AS(check(Theorem::T6, uniform_bit(), id2), SourceTypeMismatch);
}

TEST_CASE("two-stage plan arithmetic") {
  SeparationVerdict v;
  v.lhs_bits = 1.0;
  v.rhs_bits = 2.0;
  v.feasible = true;
  v.margin = 1.0;
  TwoStagePlan plan = two_stage_plan(v);
  CHECK(plan.compression_rate == doctest::Approx(1.0));
  CHECK(plan.channel_uses_per_symbol == doctest::Approx(0.5));

  v.rhs_bits = 1.0;
  CHECK(two_stage_plan(v).channel_uses_per_symbol == doctest::Approx(1.0));

  v.feasible = false;
  CHECK_THROWS_AS(two_stage_plan(v), InfeasiblePlan);

  v.feasible = true;
  v.rhs_bits = 0.0;
  CHECK_THROWS_AS(two_stage_plan(v), DegenerateCapacity);

  v.lhs_bits = 0.0;
  CHECK(two_stage_plan(v).channel_uses_per_symbol == doctest::Approx(0.0));
}
