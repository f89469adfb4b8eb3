#pragma once

#include <span>
#include <vector>

namespace lambdaq {

// Right-continuous distribution function of a finitely supported probability
// measure on the real line.
//
// Canonical form: breakpoints strictly increasing, cumulative probabilities
// strictly increasing in (0, 1] with the last one exactly 1. Every atom has
// positive mass, so two StepCDFs compare equal iff they describe the same
// distribution.
class StepCDF {
 public:
  // Validates canonical form; throws InvalidArgument otherwise.
  StepCDF(std::vector<double> breakpoints, std::vector<double> cum_probs);

  // Atoms in any order; duplicate points are merged and zero masses dropped.
  // Masses must be nonnegative and are normalised by their total.
  static StepCDF from_atoms(std::span<const double> points, std::span<const double> masses);

  // Mass 1/N per observation, duplicates merged. Cumulative values are
  // count/N so the last one is exactly 1.
  static StepCDF empirical(std::span<const double> samples);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& cum_probs() const { return cum_probs_; }
  std::size_t size() const { return breakpoints_.size(); }

  double essinf() const { return breakpoints_.front(); }
  double esssup() const { return breakpoints_.back(); }

  // F(x).
  double operator()(double x) const;
  // F(x-), the left limit.
  double left_limit(double x) const;
  // Mass of the i-th atom.
  double mass(std::size_t i) const;

  friend bool operator==(const StepCDF&, const StepCDF&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> cum_probs_;
};

enum class StochOrder { dominates, dominated, equal, incomparable };
enum class ShiftDirection { down_to, up_to };

// Two-atom distribution lambda * delta_x + (1 - lambda) * delta_y.
struct DyadicParams {
  double x;
  double y;
  double lambda;
};

StepCDF point_mass(double x);
StepCDF dyadic(const DyadicParams& p);

// alpha * F1 + (1 - alpha) * F2, pruned to canonical form.
StepCDF mixture(const StepCDF& f1, const StepCDF& f2, double alpha);

double eval_cdf(const StepCDF& f, double x);

// Four-way comparison in the usual stochastic order; `dominates` means
// f1 >=_st f2, i.e. F1(x) <= F2(x) everywhere with strict inequality somewhere.
StochOrder stoch_order(const StepCDF& f1, const StepCDF& f2);

// down_to: F_n(x) = F(x + 1/n), so F_n >= F and F_n decreases to F at every
// continuity point of F. up_to: F_n(x) = F(x - 1/n), increasing to F.
StepCDF shift_sequence(const StepCDF& f, unsigned n, ShiftDirection direction);

// Sorted union of the breakpoints of both distributions.
std::vector<double> merged_breakpoints(const StepCDF& f1, const StepCDF& f2);

const char* to_string(StochOrder order);
const char* to_string(ShiftDirection direction);

}  // namespace lambdaq
