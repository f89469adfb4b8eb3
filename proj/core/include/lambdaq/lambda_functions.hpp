#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lambdaq/extended_real.hpp"

namespace lambdaq {

enum class Monotonicity { nonincreasing, nondecreasing, general };
enum class Continuity { left, right };

namespace lambda_variant {

struct Constant {
  double level;
};

// values.size() == breakpoints.size() + 1: values[0] holds left of the first
// breakpoint, values[i] on (breakpoints[i-1], breakpoints[i]), values.back()
// right of the last one. At a breakpoint the function takes the value of the
// side named by `continuity`.
struct StepFn {
  std::vector<double> breakpoints;
  std::vector<double> values;
  Continuity continuity;
};

// beta for x <= xbar, alpha for x > xbar, with 0 < alpha < beta < 1.
struct TwoLevel {
  double alpha;
  double beta;
  double xbar;
};

// Linear interpolation between knots, constant beyond the first/last knot.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
};

// Sampled values; evaluated by linear interpolation and clamped to the end
// values outside [xs.front(), xs.back()].
struct GridSampled {
  std::vector<double> xs;
  std::vector<double> values;
};

}  // namespace lambda_variant

// The probability-loss function Lambda: R -> [0, 1].
class LambdaSpec {
 public:
  using Variant = std::variant<lambda_variant::Constant, lambda_variant::StepFn, lambda_variant::TwoLevel,
                               lambda_variant::PiecewiseLinear, lambda_variant::GridSampled>;

  // Validates the representation. If `declared` is given it must be
  // consistent with the actual shape (general is always consistent);
  // SpecViolation otherwise.
  explicit LambdaSpec(Variant v, std::optional<Monotonicity> declared = std::nullopt);

  static LambdaSpec constant(double level);
  static LambdaSpec step(std::vector<double> breakpoints, std::vector<double> values, Continuity continuity);
  static LambdaSpec two_level(double alpha, double beta, double xbar);
  static LambdaSpec piecewise_linear(std::vector<std::pair<double, double>> knots);
  static LambdaSpec grid(std::vector<double> xs, std::vector<double> values);

  const Variant& variant() const { return variant_; }
  // Declared monotonicity, or the detected one when nothing was declared.
  Monotonicity monotonicity() const { return monotonicity_; }

  double operator()(double x) const;

  // Smallest and largest value taken anywhere on R.
  double min_value() const { return min_value_; }
  double max_value() const { return max_value_; }

  // Non-fatal diagnostics, e.g. values exactly 0 or 1.
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool is_grid() const { return std::holds_alternative<lambda_variant::GridSampled>(variant_); }
  bool is_constant() const { return min_value_ == max_value_; }

  friend bool operator==(const LambdaSpec& a, const LambdaSpec& b);

 private:
  Variant variant_;
  Monotonicity monotonicity_;
  double min_value_ = 0.0;
  double max_value_ = 1.0;
  std::vector<std::string> warnings_;
};

// lambda -> z(lambda) sampled on a probability grid, where z(lambda) is the
// internal value of a functional on dyadic distributions with weight lambda on
// the lower atom (+inf when always at the upper atom, -inf when always at the
// lower one).
struct ZFunction {
  std::vector<double> grid;                // strictly increasing, in (0, 1)
  std::vector<ExtendedReal> values;        // nonincreasing

  // Throws HypothesisViolation naming the first offending pair when the
  // values are not nonincreasing.
  void validate() const;
  ExtendedReal at(double lambda) const;    // lambda must be a grid point
};

double eval_lambda(const LambdaSpec& spec, double x);

// Tightest shape decidable from the representation; constants report
// nonincreasing.
Monotonicity validate_monotone(const LambdaSpec& spec);

// Right-continuous version of a nonincreasing spec. Only values at jump
// points change. TwoLevel is returned unchanged.
LambdaSpec canonical_right_continuous(const LambdaSpec& spec);

// Lambda(x) := inf { lambda_k : z(lambda_k) <= x } with inf of the empty set
// equal to 1. Right-continuous nonincreasing step function.
LambdaSpec lambda_from_z(const ZFunction& z);

// Lambda(x) := sup { lambda_k : z(lambda_k) > x } with sup of the empty set
// equal to 0. The grid-resolution lower companion of lambda_from_z, exact on
// levels for right-quantile probing.
LambdaSpec lambda_from_z_upper_side(const ZFunction& z);

// Linear interpolant of a grid spec; other variants are returned unchanged.
LambdaSpec to_piecewise_linear(const LambdaSpec& spec);

// Values lowered/raised towards 0/1: Lambda_eps = (1 - eps) Lambda and
// Lambda + eps (1 - Lambda). Shapes and breakpoints are kept.
LambdaSpec scale_towards_zero(const LambdaSpec& spec, double eps);
LambdaSpec scale_towards_one(const LambdaSpec& spec, double eps);

const char* to_string(Monotonicity m);
const char* to_string(Continuity c);

}  // namespace lambdaq
