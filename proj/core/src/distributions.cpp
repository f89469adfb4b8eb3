#include "lambdaq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <string>

#include "lambdaq/errors.hpp"

namespace lambdaq {

namespace {

// Builds canonical form from (point, cumulative) pairs that are already
// sorted by point and nondecreasing in cumulative value: flat steps are
// dropped and the final value is pinned to 1.
StepCDF canonicalize(const std::vector<double>& points, std::vector<double> cum) {
  std::vector<double> bp;
  std::vector<double> cp;
  bp.reserve(points.size());
  cp.reserve(points.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double c = std::min(cum[i], 1.0);
    if (c > prev) {
      bp.push_back(points[i]);
      cp.push_back(c);
      prev = c;
    }
    if (c >= 1.0) break;
  }
  if (cp.empty()) throw InvalidArgument("distribution has no mass");
  cp.back() = 1.0;
  return StepCDF(std::move(bp), std::move(cp));
}

}  // namespace

StepCDF::StepCDF(std::vector<double> breakpoints, std::vector<double> cum_probs)
    : breakpoints_(std::move(breakpoints)), cum_probs_(std::move(cum_probs)) {
  if (breakpoints_.empty()) throw InvalidArgument("StepCDF needs at least one breakpoint");
  if (breakpoints_.size() != cum_probs_.size()) {
    throw InvalidArgument("StepCDF breakpoints and cum_probs differ in length");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw InvalidArgument("StepCDF breakpoint not finite");
    if (!(cum_probs_[i] > 0.0 && cum_probs_[i] <= 1.0)) {
      throw InvalidArgument("StepCDF cumulative probability outside (0, 1]");
    }
    if (i > 0) {
      if (!(breakpoints_[i - 1] < breakpoints_[i])) {
        throw InvalidArgument("StepCDF breakpoints must be strictly increasing");
      }
      if (!(cum_probs_[i - 1] < cum_probs_[i])) {
        throw InvalidArgument("StepCDF cumulative probabilities must be strictly increasing");
      }
    }
  }
  if (cum_probs_.back() != 1.0) throw InvalidArgument("StepCDF must end at probability 1");
}

StepCDF StepCDF::from_atoms(std::span<const double> points, std::span<const double> masses) {
  if (points.size() != masses.size()) throw InvalidArgument("from_atoms: size mismatch");
  std::map<double, double> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw InvalidArgument("from_atoms: non-finite point");
    if (!(masses[i] >= 0.0) || !std::isfinite(masses[i])) {
      throw InvalidArgument("from_atoms: masses must be finite and nonnegative");
    }
    atoms[points[i]] += masses[i];
    total += masses[i];
  }
  if (!(total > 0.0)) throw InvalidArgument("from_atoms: total mass is zero");
  std::vector<double> bp;
  std::vector<double> cum;
  double running = 0.0;
  for (const auto& [x, m] : atoms) {
    running += m;
    bp.push_back(x);
    cum.push_back(running / total);
  }
  return canonicalize(bp, std::move(cum));
}

StepCDF StepCDF::empirical(std::span<const double> samples) {
  if (samples.empty()) throw InvalidArgument("empirical: no observations");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double s : sorted) {
    if (!std::isfinite(s)) throw InvalidArgument("empirical: non-finite observation");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<double> bp;
  std::vector<double> cum;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    bp.push_back(sorted[i]);
    cum.push_back(static_cast<double>(i + 1) / n);
  }
  return StepCDF(std::move(bp), std::move(cum));
}

double StepCDF::operator()(double x) const {
  // Number of breakpoints <= x.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return 0.0;
  return cum_probs_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepCDF::left_limit(double x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return 0.0;
  return cum_probs_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepCDF::mass(std::size_t i) const {
  return i == 0 ? cum_probs_[0] : cum_probs_[i] - cum_probs_[i - 1];
}

StepCDF point_mass(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("point_mass: x must be finite");
  return StepCDF({x}, {1.0});
}

StepCDF dyadic(const DyadicParams& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("dyadic: atoms must be finite");
  if (!(p.x < p.y)) throw InvalidArgument("dyadic: requires x < y");
  if (!(p.lambda > 0.0 && p.lambda < 1.0)) throw InvalidArgument("dyadic: lambda must lie in (0, 1)");
  return StepCDF({p.x, p.y}, {p.lambda, 1.0});
}

std::vector<double> merged_breakpoints(const StepCDF& f1, const StepCDF& f2) {
  std::vector<double> out;
  out.reserve(f1.size() + f2.size());
  std::set_union(f1.breakpoints().begin(), f1.breakpoints().end(), f2.breakpoints().begin(),
                 f2.breakpoints().end(), std::back_inserter(out));
  return out;
}

StepCDF mixture(const StepCDF& f1, const StepCDF& f2, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("mixture: alpha must lie in [0, 1]");
  if (alpha == 1.0) return f1;
  if (alpha == 0.0) return f2;
  const std::vector<double> grid = merged_breakpoints(f1, f2);
  std::vector<double> cum;
  cum.reserve(grid.size());
  const double beta = 1.0 - alpha;
  for (double x : grid) cum.push_back(alpha * f1(x) + beta * f2(x));
  return canonicalize(grid, std::move(cum));
}

double eval_cdf(const StepCDF& f, double x) { return f(x); }

StochOrder stoch_order(const StepCDF& f1, const StepCDF& f2) {
  if (f1 == f2) return StochOrder::equal;
  bool f1_below = false;  // F1(x) < F2(x) somewhere
  bool f1_above = false;
  for (double x : merged_breakpoints(f1, f2)) {
    const double a = f1(x);
    const double b = f2(x);
    if (a < b) f1_below = true;
    if (a > b) f1_above = true;
  }
  if (f1_below && f1_above) return StochOrder::incomparable;
  if (f1_below) return StochOrder::dominates;
  if (f1_above) return StochOrder::dominated;
  return StochOrder::equal;
}

StepCDF shift_sequence(const StepCDF& f, unsigned n, ShiftDirection direction) {
  if (n == 0) throw InvalidArgument("shift_sequence: n must be positive");
  const double step = 1.0 / static_cast<double>(n);
  std::vector<double> bp = f.breakpoints();
  for (double& b : bp) b = direction == ShiftDirection::down_to ? b - step : b + step;
  return StepCDF(std::move(bp), f.cum_probs());
}

const char* to_string(StochOrder order) {
  switch (order) {
    case StochOrder::dominates:
      return "dominates";
    case StochOrder::dominated:
      return "dominated";
    case StochOrder::equal:
      return "equal";
    case StochOrder::incomparable:
      return "incomparable";
  }
  return "?";
}

const char* to_string(ShiftDirection direction) {
  return direction == ShiftDirection::down_to ? "down_to" : "up_to";
}

}  // namespace lambdaq
