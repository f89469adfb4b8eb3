#pragma once

#include <vector>

#include "lambdaq/distributions.hpp"
#include "lambdaq/extended_real.hpp"
#include "lambdaq/lambda_functions.hpp"

namespace lambdaq {

// q_minus       = inf { x : F(x) >= Lambda(x) }
// q_plus        = inf { x : F(x) >  Lambda(x) }
// q_tilde_minus = sup { x : F(x) <  Lambda(x) }
// q_tilde_plus  = sup { x : F(x) <= Lambda(x) }
enum class QuantileKind { q_minus, q_plus, q_tilde_minus, q_tilde_plus };
enum class QuantileSide { minus, plus };

inline constexpr QuantileKind kAllKinds[] = {QuantileKind::q_minus, QuantileKind::q_plus,
                                             QuantileKind::q_tilde_minus, QuantileKind::q_tilde_plus};

// Classic left/right quantiles q_level^-(F) and q_level^+(F), read directly off
// the cumulative probabilities. q_0^- = -inf and q_1^+ = +inf.
ExtendedReal classic_quantile(const StepCDF& f, double level, QuantileSide side);

// Exact inf/sup of the defining set for step-type Lambda (constant, step,
// two-level) and piecewise-linear Lambda. Grid-sampled Lambda is rejected
// with InvalidArgument; use continuous_quantile or to_piecewise_linear.
ExtendedReal lambda_quantile(const StepCDF& f, const LambdaSpec& spec, QuantileKind kind);

// Closed form for Lambda = beta 1{x <= xbar} + alpha 1{x > xbar}:
// q_beta^- if q_beta^- <= xbar, q_alpha^- if q_alpha^- >= xbar, xbar otherwise.
ExtendedReal two_level_quantile(const StepCDF& f, double alpha, double beta, double xbar);

// A distribution function sampled on an increasing grid; evaluated by linear
// interpolation and clamped to the end values outside the grid.
class GridCDF {
 public:
  GridCDF(std::vector<double> xs, std::vector<double> values);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(double x) const;

 private:
  std::vector<double> xs_;
  std::vector<double> values_;
};

// Bisection on the sign of F - Lambda over the grid hull, stopped once the
// bracket is no wider than xtol. For the inf kinds the first grid cell where
// the defining inequality starts to hold is refined and its right end
// returned; the sup kinds refine the last cell where it stops holding and
// return the left end. Throws HypothesisViolation when no crossing exists on
// the hull.
double continuous_quantile(const GridCDF& f, const LambdaSpec& spec, QuantileKind kind, double xtol = 1e-9);

// Lambda V@R = -q_plus. Requires a nonincreasing Lambda with 0 < Lambda < 1
// (SpecViolation otherwise).
double lambda_var(const StepCDF& f, const LambdaSpec& spec);

const char* to_string(QuantileKind kind);
const char* to_string(QuantileSide side);

}  // namespace lambdaq
