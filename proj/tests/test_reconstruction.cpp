#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <random>

#include "lambdaq/errors.hpp"
#include "lambdaq/reconstruction.hpp"
#include "lambdaq/sampling.hpp"
#include "oracle.hpp"

namespace lambdaq {
namespace {

namespace lv = lambda_variant;

const ExtendedReal kPosInf = ExtendedReal::pos_inf();
const ExtendedReal kNegInf = ExtendedReal::neg_inf();

FunctionalHandle median() { return classic_functional(0.5, QuantileSide::minus); }

FunctionalHandle hidden_two_level(QuantileKind kind = QuantileKind::q_minus) {
  return quantile_functional(LambdaSpec::two_level(0.3, 0.7, 2.0), kind);
}

// Right-continuous nonincreasing step Lambda with levels k / 513.
LambdaSpec hidden_grid_step(sampling::Rng& rng) {
  const std::size_t jumps = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  std::set<int> bp;
  while (bp.size() < jumps) bp.insert(std::uniform_int_distribution<int>(-64, 64)(rng));
  std::set<int, std::greater<>> lv;
  while (lv.size() < jumps + 1) lv.insert(std::uniform_int_distribution<int>(1, 512)(rng));
  std::vector<double> bps;
  for (int b : bp) bps.push_back(b / 8.0);
  std::vector<double> vals;
  for (int l : lv) vals.push_back(static_cast<double>(l) / 513.0);
  return LambdaSpec::step(bps, vals, Continuity::right);
}

TEST(ClassifyDyadic, Examples) {
  EXPECT_EQ(classify_dyadic(median(), 0.25).verdict, DyadicVerdict::boundary_right);
  EXPECT_EQ(classify_dyadic(median(), 0.75).verdict, DyadicVerdict::boundary_left);
  const DyadicClassification c = classify_dyadic(hidden_two_level(), 0.5);
  EXPECT_EQ(c.verdict, DyadicVerdict::internal);
  EXPECT_EQ(c.z, 2.0);
  EXPECT_LT(c.x, 2.0);
  EXPECT_GT(c.y, 2.0);
  EXPECT_EQ(c.z_value(), ExtendedReal::finite(2.0));
  EXPECT_EQ(classify_dyadic(median(), 0.25).z_value(), kPosInf);
}

TEST(ClassifyDyadic, ValueOutsideBracketIsAHypothesisViolation) {
  EXPECT_THROW(classify_dyadic(constant_functional(5e9), 0.5), HypothesisViolation);
  EXPECT_THROW(probe_dyadic(constant_functional(3.0), 0.5, -1.0, 1.0), HypothesisViolation);
}

TEST(ClassifyDyadic, InternalValueDoesNotDependOnBracket) {
  std::size_t internal = 0;
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    auto rng = sampling::trial_rng(60, 0, trial);
    const auto t = quantile_functional(sampling::random_nonincreasing_step(rng), QuantileKind::q_minus);
    const double lambda = sampling::random_dyadic_weight(rng, 8);
    const DyadicClassification c = classify_dyadic(t, lambda);
    if (c.verdict != DyadicVerdict::internal) continue;
    ++internal;
    std::uniform_real_distribution<double> gap(1e-3, 50.0);
    for (int k = 0; k < 10; ++k) {
      const double x = c.z - gap(rng);
      const double y = c.z + gap(rng);
      const DyadicClassification p = probe_dyadic(t, lambda, x, y);
      ASSERT_EQ(p.verdict, DyadicVerdict::internal);
      ASSERT_EQ(p.z, c.z);
    }
  }
  EXPECT_GE(internal, 10u);
}

TEST(BuildZ, Median) {
  const ZFunction z = build_z(median(), {.grid_n = 31});
  for (std::size_t k = 0; k < z.grid.size(); ++k) {
    EXPECT_EQ(z.values[k], z.grid[k] < 0.5 ? kPosInf : kNegInf) << z.grid[k];
  }
}

TEST(BuildZ, EssentialSupremum) {
  const ZFunction z = build_z(esssup_functional(), {.grid_n = 31});
  for (const ExtendedReal& v : z.values) EXPECT_EQ(v, kPosInf);
}

TEST(BuildZ, TwoLevel) {
  const ZFunction z = build_z(hidden_two_level(), {.grid_n = 63});
  for (std::size_t k = 0; k < z.grid.size(); ++k) {
    const double l = z.grid[k];
    const ExtendedReal want = l < 0.3 ? kPosInf : (l < 0.7 ? ExtendedReal::finite(2.0) : kNegInf);
    EXPECT_EQ(z.values[k], want) << l;
  }
}

TEST(BuildZ, RefinementAddsLevelsBetweenChanges) {
  const ZFunction coarse = build_z(hidden_two_level(), {.grid_n = 15, .refine_iterations = 0});
  const ZFunction fine = build_z(hidden_two_level(), {.grid_n = 15, .refine_iterations = 20});
  EXPECT_EQ(coarse.grid.size(), 15u);
  EXPECT_GT(fine.grid.size(), coarse.grid.size());
  EXPECT_NO_THROW(fine.validate());
}

TEST(BuildZ, IncreasingZRejected) {
  // Internal value 2 lambda - 1 on every bracket containing it.
  const auto t = FunctionalHandle("increasing z", [](const StepCDF& f) {
    const double v = 2.0 * f.cum_probs().front() - 1.0;
    return ExtendedReal::finite(std::clamp(v, f.essinf(), f.esssup()));
  });
  EXPECT_THROW(build_z(t, {.grid_n = 31}), HypothesisViolation);
}

TEST(Duality, HiddenGridLevelsRecoveredExactly) {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    auto rng = sampling::trial_rng(61, 0, trial);
    const LambdaSpec hidden = hidden_grid_step(rng);
    const ZFunction z = build_z(quantile_functional(hidden, QuantileKind::q_minus), {.grid_n = 512});
    const LambdaSpec rec = lambda_from_z(z);
    const auto& bps = std::get<lv::StepFn>(hidden.variant()).breakpoints;
    for (int i = -600; i <= 600; ++i) {
      const double x = i / 64.0 + 1.0 / 128.0;
      ASSERT_EQ(rec(x), hidden(x)) << trial << " at " << x;
    }
    for (double b : bps) ASSERT_EQ(rec(b), hidden(b));
  }
}

TEST(Duality, DisplayConditionsOnRandomDyadics) {
  auto rng0 = sampling::trial_rng(62, 0, 0);
  const LambdaSpec hidden = hidden_grid_step(rng0);
  const auto t = quantile_functional(hidden, QuantileKind::q_minus);
  const ZFunction z = build_z(t, {.grid_n = 512});
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    auto rng = sampling::trial_rng(62, 1, trial);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, z.grid.size() - 1)(rng);
    std::uniform_int_distribution<int> pos(-120, 120);
    double x = pos(rng) / 8.0;
    double y = pos(rng) / 8.0;
    if (x == y) y += 1.0;
    if (y < x) std::swap(x, y);
    const ExtendedReal zl = z.values[k];
    const ExtendedReal v = t(dyadic({x, y, z.grid[k]}));
    if (ExtendedReal::finite(y) <= zl) ASSERT_EQ(v, ExtendedReal::finite(y));
    else if (ExtendedReal::finite(x) >= zl) ASSERT_EQ(v, ExtendedReal::finite(x));
    else ASSERT_EQ(v, zl);
  }
}

TEST(Reconstruct, ConstantHalf) {
  const ReconstructionResult r = reconstruct(quantile_functional(LambdaSpec::constant(0.5), QuantileKind::q_minus),
                                             {.verify_trials = 1000});
  ASSERT_TRUE(r.lambda_spec);
  EXPECT_TRUE(r.lambda_spec->is_constant());
  EXPECT_EQ((*r.lambda_spec)(0.0), 0.5);
  EXPECT_TRUE(r.prechecks_passed());
  EXPECT_TRUE(r.verification.passed());
  EXPECT_EQ(r.verification.flagged, 0u);
}

TEST(Reconstruct, HiddenTwoLevel) {
  const ReconstructionResult r = reconstruct(hidden_two_level(), {.verify_trials = 1000});
  ASSERT_TRUE(r.lambda_spec);
  const LambdaSpec& s = *r.lambda_spec;
  EXPECT_NEAR(s(2.0 - 1e-9), 0.7, 1.0 / 513.0);
  EXPECT_NEAR(s(2.0), 0.3, 1.0 / 513.0);
  const auto& step = std::get<lv::StepFn>(s.variant());
  EXPECT_EQ(step.breakpoints, std::vector<double>{2.0});
  EXPECT_TRUE(r.prechecks_passed());
  EXPECT_TRUE(r.verification.passed());
  EXPECT_LE(r.verification.flagged, 10u);
}

TEST(Reconstruct, RightSide) {
  const ReconstructionResult r =
      reconstruct(hidden_two_level(QuantileKind::q_plus), {.side = QuantileSide::plus, .verify_trials = 500});
  EXPECT_TRUE(r.prechecks_passed());
  EXPECT_TRUE(r.verification.passed());
  ASSERT_TRUE(r.lambda_spec);
  EXPECT_NEAR((*r.lambda_spec)(0.0), 0.7, 1.0 / 513.0);
  EXPECT_NEAR((*r.lambda_spec)(3.0), 0.3, 1.0 / 513.0);
}

TEST(Reconstruct, IncreasingLambdaFailsPrechecks) {
  std::vector<double> xs;
  std::vector<double> vs;
  for (int i = -256; i <= 256; ++i) {
    xs.push_back(i / 64.0);
    vs.push_back(0.5 * std::erfc(-(i / 64.0) / std::sqrt(2.0)));
  }
  const auto t = quantile_functional(LambdaSpec::grid(xs, vs), QuantileKind::q_minus);
  const ReconstructionResult r = reconstruct(t, {.grid_n = 128, .verify_trials = 200, .precheck_trials = 200});
  EXPECT_FALSE(r.prechecks_passed());
  bool locality_failed = false;
  for (const CheckReport& p : r.prechecks) locality_failed |= p.axiom == "locality" && !p.passed();
  EXPECT_TRUE(locality_failed);
  EXPECT_FALSE(r.verification.passed());
}

TEST(Reconstruct, AlwaysLowerAtomRejectedOnLeftSide) {
  const ReconstructionResult r = reconstruct(essinf_functional(), {.grid_n = 31, .verify_trials = 10});
  EXPECT_FALSE(r.verification.passed());
  EXPECT_FALSE(r.lambda_spec.has_value());
}

TEST(Reconstruct, FailedVerificationWitnessReproduces) {
  const auto t = FunctionalHandle("shifted median", [](const StepCDF& f) {
    const ExtendedReal v = classic_quantile(f, 0.5, QuantileSide::minus);
    const double cap = f.esssup();
    return ExtendedReal::finite(std::min(v.value() + 0.25, cap));
  });
  const ReconstructionResult r = reconstruct(t, {.grid_n = 63, .verify_trials = 200, .precheck_trials = 50});
  ASSERT_FALSE(r.verification.passed());
  if (r.verification.witness) EXPECT_TRUE(verification_witness_reproduces(t, r));
}

}  // namespace
}  // namespace lambdaq
