#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lambdaq/distributions.hpp"
#include "lambdaq/extended_real.hpp"
#include "lambdaq/lambda_functions.hpp"
#include "lambdaq/quantile_engine.hpp"

namespace lambdaq {

// A black-box map StepCDF -> ExtendedReal. Evaluation must be deterministic
// and safe to call from several threads at once.
class FunctionalHandle {
 public:
  using Fn = std::function<ExtendedReal(const StepCDF&)>;

  FunctionalHandle(std::string name, Fn fn);

  ExtendedReal operator()(const StepCDF& f) const { return fn_(f); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

// Built-ins. Grid-sampled Lambda is evaluated through its linear interpolant.
FunctionalHandle quantile_functional(const LambdaSpec& spec, QuantileKind kind);
FunctionalHandle classic_functional(double level, QuantileSide side);
FunctionalHandle mean_functional();
FunctionalHandle constant_functional(double value);
FunctionalHandle esssup_functional();
FunctionalHandle essinf_functional();

// Strictly increasing piecewise-linear bijection of R: linear between knots,
// unit slope beyond them.
class MonotoneTransform {
 public:
  explicit MonotoneTransform(std::vector<std::pair<double, double>> knots);

  double operator()(double u) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

// F o phi^{-1}: atoms moved through phi, probabilities unchanged.
StepCDF apply_transform(const StepCDF& f, const MonotoneTransform& phi);

enum class Verdict { pass, fail };

struct Witness {
  std::vector<StepCDF> distributions;
  std::vector<ExtendedReal> values;
  std::vector<std::pair<std::string, double>> params;
  std::optional<MonotoneTransform> transform;
  std::string note;

  double param(const std::string& key) const;
};

struct CheckReport {
  std::string axiom;
  Verdict verdict = Verdict::pass;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::size_t flagged = 0;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
};

enum class SemicontinuityDirection { lower, upper };
enum class QuasiMode { quasiconcave, quasiconvex };

// Points used by default when checking normalization.
std::vector<double> default_normalization_points();

CheckReport check_normalization(const FunctionalHandle& t, const std::vector<double>& xs);
CheckReport check_monotonicity(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed);

// Per trial, draws F and a window (a, b) around a finite T(F), then rebuilds
// F outside the window with several structured families (collapse below,
// tail stretch, atom split, spread above) so that G = F on (a, b).
CheckReport check_locality(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed);

// Monotone-sequence characterisation: lower uses F_n decreasing to F
// (1/n left shifts and mass leaked to a far-left atom), upper the mirrored
// increasing sequences. Runs check_monotonicity first and throws
// HypothesisViolation if T is not monotone. With tolerance 0 the limit must
// be hit exactly (up to transport of the value by the final shift).
CheckReport check_semicontinuity(const FunctionalHandle& t, SemicontinuityDirection direction, std::size_t trials,
                                 std::uint64_t seed, double tolerance = 0.0);

// Throws CheckError when fewer than 10% of the trials yield a usable pair
// F1, F2 with T(F1) = T(F2) finite.
CheckReport check_cxls(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed);

CheckReport check_quasi(const FunctionalHandle& t, QuasiMode mode, std::size_t trials, std::uint64_t seed);

// Draws compactly supported F (random distributions at several scales and
// wide two-atom distributions) and random piecewise-linear bijections.
CheckReport check_ordinal_covariance(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed);

// Re-evaluates a failing report's witness in isolation and confirms the
// violation. False for passing reports.
bool witness_reproduces(const FunctionalHandle& t, const CheckReport& report);

const char* to_string(Verdict v);
const char* to_string(SemicontinuityDirection d);
const char* to_string(QuasiMode m);

}  // namespace lambdaq
