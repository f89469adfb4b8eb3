#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lambdaq/errors.hpp"
#include "lambdaq/lambda_functions.hpp"
#include "lambdaq/sampling.hpp"

namespace lambdaq {
namespace {

namespace lv = lambda_variant;

TEST(EvalLambda, Examples) {
  EXPECT_EQ(eval_lambda(LambdaSpec::constant(0.5), 17.0), 0.5);
  const LambdaSpec two = LambdaSpec::two_level(0.95, 0.99, 97.0);
  EXPECT_EQ(eval_lambda(two, 97.0), 0.99);
  EXPECT_EQ(eval_lambda(two, 97.0001), 0.95);
  const LambdaSpec ind = LambdaSpec::step({0.0}, {1.0, 0.0}, Continuity::right);
  EXPECT_EQ(eval_lambda(ind, 0.0), 0.0);
  EXPECT_EQ(eval_lambda(ind, -1e-12), 1.0);
  const LambdaSpec left = LambdaSpec::step({0.0}, {1.0, 0.0}, Continuity::left);
  EXPECT_EQ(eval_lambda(left, 0.0), 1.0);
}

TEST(EvalLambda, PiecewiseLinearAndGrid) {
  const LambdaSpec pl = LambdaSpec::piecewise_linear({{0.0, 0.2}, {1.0, 0.8}});
  EXPECT_EQ(pl(-5.0), 0.2);
  EXPECT_EQ(pl(0.5), 0.5);
  EXPECT_EQ(pl(3.0), 0.8);
  const LambdaSpec g = LambdaSpec::grid({0.0, 2.0}, {1.0, 0.0});
  EXPECT_EQ(g(1.0), 0.5);
  EXPECT_EQ(g(-1.0), 1.0);
  EXPECT_EQ(g(9.0), 0.0);
  EXPECT_EQ(to_piecewise_linear(g)(0.5), 0.75);
}

TEST(LambdaSpec, RejectsInvalidRepresentations) {
  EXPECT_THROW(LambdaSpec::constant(1.5), InvalidArgument);
  EXPECT_THROW(LambdaSpec::two_level(0.99, 0.95, 0.0), InvalidArgument);
  EXPECT_THROW(LambdaSpec::two_level(0.0, 0.5, 0.0), InvalidArgument);
  EXPECT_THROW(LambdaSpec::step({1.0, 0.0}, {0.5, 0.4, 0.3}, Continuity::right), InvalidArgument);
  EXPECT_THROW(LambdaSpec::step({0.0}, {0.5}, Continuity::right), InvalidArgument);
  EXPECT_THROW(LambdaSpec::piecewise_linear({}), InvalidArgument);
  EXPECT_THROW(LambdaSpec::grid({0.0, 1.0}, {0.5, -0.1}), InvalidArgument);
}

TEST(ValidateMonotone, Classification) {
  EXPECT_EQ(validate_monotone(LambdaSpec::constant(0.3)), Monotonicity::nonincreasing);
  EXPECT_EQ(validate_monotone(LambdaSpec::two_level(0.95, 0.99, 0.0)), Monotonicity::nonincreasing);
  EXPECT_EQ(validate_monotone(LambdaSpec::piecewise_linear({{0.0, 0.2}, {1.0, 0.8}})), Monotonicity::nondecreasing);
  EXPECT_EQ(validate_monotone(LambdaSpec::step({0.0, 1.0}, {0.2, 0.8, 0.1}, Continuity::left)),
            Monotonicity::general);
}

TEST(ValidateMonotone, DeclaredMismatchRejected) {
  EXPECT_THROW(LambdaSpec(lv::PiecewiseLinear{{{0.0, 0.2}, {1.0, 0.8}}}, Monotonicity::nonincreasing),
               SpecViolation);
  EXPECT_NO_THROW(LambdaSpec(lv::PiecewiseLinear{{{0.0, 0.2}, {1.0, 0.8}}}, Monotonicity::general));
  EXPECT_NO_THROW(LambdaSpec(lv::Constant{0.4}, Monotonicity::nondecreasing));
}

TEST(CanonicalRightContinuous, Examples) {
  const LambdaSpec left = LambdaSpec::step({0.0}, {0.8, 0.2}, Continuity::left);
  const LambdaSpec right = canonical_right_continuous(left);
  EXPECT_EQ(right(0.0), 0.2);
  EXPECT_EQ(right(-0.5), 0.8);
  EXPECT_EQ(canonical_right_continuous(LambdaSpec::constant(0.3)), LambdaSpec::constant(0.3));
  const LambdaSpec two = LambdaSpec::two_level(0.3, 0.7, 2.0);
  EXPECT_EQ(canonical_right_continuous(two), two);
  EXPECT_THROW(canonical_right_continuous(LambdaSpec::piecewise_linear({{0.0, 0.2}, {1.0, 0.8}})), SpecViolation);
}

TEST(CanonicalRightContinuous, AgreesAtContinuityPoints) {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto rng = sampling::trial_rng(21, 0, trial);
    const LambdaSpec s = sampling::random_nonincreasing_step(rng);
    const LambdaSpec r = canonical_right_continuous(s);
    std::uniform_real_distribution<double> u(-12.0, 12.0);
    const auto& bps = std::get<lv::StepFn>(s.variant()).breakpoints;
    for (int k = 0; k < 200; ++k) {
      const double x = u(rng);
      if (std::find(bps.begin(), bps.end(), x) != bps.end()) continue;
      ASSERT_EQ(s(x), r(x));
    }
  }
}

TEST(EvalLambda, NonincreasingSpecsEvaluateNonincreasing) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto rng = sampling::trial_rng(22, 0, trial);
    const LambdaSpec s = sampling::random_nonincreasing_step(rng);
    std::uniform_real_distribution<double> u(-12.0, 12.0);
    std::vector<double> xs(1000);
    for (double& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) ASSERT_LE(s(xs[i]), s(xs[i - 1]));
  }
}

ZFunction z_on_grid(std::size_t n, auto fn) {
  ZFunction z;
  for (std::size_t k = 1; k <= n; ++k) {
    const double l = static_cast<double>(k) / static_cast<double>(n + 1);
    z.grid.push_back(l);
    z.values.push_back(fn(l));
  }
  return z;
}

TEST(LambdaFromZ, AlwaysUpperAtomGivesOne) {
  const ZFunction z = z_on_grid(15, [](double) { return ExtendedReal::pos_inf(); });
  const LambdaSpec s = lambda_from_z(z);
  EXPECT_TRUE(s.is_constant());
  EXPECT_EQ(s(0.0), 1.0);
  EXPECT_EQ(lambda_from_z_upper_side(z)(0.0), 15.0 / 16.0);
}

TEST(LambdaFromZ, ClassicQuantileShape) {
  const ZFunction z = z_on_grid(15, [](double l) { return l < 0.5 ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf(); });
  const LambdaSpec s = lambda_from_z(z);
  EXPECT_TRUE(s.is_constant());
  EXPECT_EQ(s(0.0), 0.5);
}

TEST(LambdaFromZ, TwoLevelShapeAndEquivalence) {
  const double a = 4.0 / 16.0;
  const double b = 12.0 / 16.0;
  const ZFunction z = z_on_grid(15, [&](double l) {
    if (l < a) return ExtendedReal::pos_inf();
    if (l < b) return ExtendedReal::finite(2.0);
    return ExtendedReal::neg_inf();
  });
  const LambdaSpec s = lambda_from_z(z);
  EXPECT_EQ(s(1.999), b);
  EXPECT_EQ(s(2.0), a);
  EXPECT_EQ(s(50.0), a);
  // lambda >= Lambda(x) iff z(lambda) <= x on every grid point.
  for (std::size_t k = 0; k < z.grid.size(); ++k) {
    for (double x : {-10.0, 1.0, 1.999, 2.0, 2.001, 10.0}) {
      EXPECT_EQ(z.grid[k] >= s(x), z.values[k] <= ExtendedReal::finite(x));
    }
  }
}

TEST(LambdaFromZ, EquivalenceOnRandomMonotoneZ) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto rng = sampling::trial_rng(23, 0, trial);
    std::uniform_int_distribution<int> pick(-20, 20);
    std::vector<int> finite(31);
    for (int& v : finite) v = pick(rng);
    std::sort(finite.begin(), finite.end(), std::greater<>());
    const int n_pos = std::uniform_int_distribution<int>(0, 5)(rng);
    const int n_neg = std::uniform_int_distribution<int>(0, 5)(rng);
    ZFunction z;
    for (int k = 0; k < 31; ++k) {
      z.grid.push_back((k + 1) / 32.0);
      if (k < n_pos) z.values.push_back(ExtendedReal::pos_inf());
      else if (k >= 31 - n_neg) z.values.push_back(ExtendedReal::neg_inf());
      else z.values.push_back(ExtendedReal::finite(finite[static_cast<std::size_t>(k)]));
    }
    const LambdaSpec s = lambda_from_z(z);
    const LambdaSpec u = lambda_from_z_upper_side(z);
    for (std::size_t k = 0; k < z.grid.size(); ++k) {
      for (int xi = -42; xi <= 42; ++xi) {
        const double x = xi / 2.0;
        ASSERT_EQ(z.grid[k] >= s(x), z.values[k] <= ExtendedReal::finite(x));
        ASSERT_EQ(z.grid[k] <= u(x), z.values[k] > ExtendedReal::finite(x));
        ASSERT_LE(u(x), s(x));
      }
    }
  }
}

TEST(LambdaFromZ, RejectsNonMonotoneZ) {
  ZFunction z;
  z.grid = {0.25, 0.5, 0.75};
  z.values = {ExtendedReal::finite(1.0), ExtendedReal::finite(2.0), ExtendedReal::neg_inf()};
  EXPECT_THROW(lambda_from_z(z), HypothesisViolation);
  try {
    z.validate();
    FAIL() << "expected HypothesisViolation";
  } catch (const HypothesisViolation& e) {
    EXPECT_NE(std::string(e.what()).find("z(0.25)"), std::string::npos);
  }
}

TEST(ScaleLevels, TowardsZeroAndOne) {
  const LambdaSpec s = LambdaSpec::step({0.0}, {0.75, 0.25}, Continuity::right);
  EXPECT_EQ(scale_towards_zero(s, 0.5)(-1.0), 0.375);
  EXPECT_EQ(scale_towards_one(s, 0.5)(1.0), 0.625);
  EXPECT_EQ(scale_towards_zero(s, 0.5)(0.0), 0.125);
}

TEST(LambdaSpec, WarnsOnZeroAndOne) {
  EXPECT_TRUE(LambdaSpec::constant(0.5).warnings().empty());
  EXPECT_FALSE(LambdaSpec::step({0.0}, {1.0, 0.0}, Continuity::right).warnings().empty());
}

}  // namespace
}  // namespace lambdaq
