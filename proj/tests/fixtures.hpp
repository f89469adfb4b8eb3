#pragma once

#include <cmath>
#include <vector>

#include "lambdaq/distributions.hpp"
#include "lambdaq/lambda_functions.hpp"

namespace lambdaq::testing {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Standard normal distribution function sampled on k/64, |k| <= 512.
inline LambdaSpec normal_grid() {
  std::vector<double> xs;
  std::vector<double> vs;
  for (int i = -512; i <= 512; ++i) {
    xs.push_back(i / 64.0);
    vs.push_back(normal_cdf(i / 64.0));
  }
  return LambdaSpec::grid(xs, vs);
}

// Step approximation of Phi(2x) on k/64, |k| <= 256.
inline StepCDF normal_2x_steps() {
  std::vector<double> pts;
  std::vector<double> masses;
  double prev = 0.0;
  for (int i = -256; i <= 256; ++i) {
    const double x = i / 64.0;
    const double c = i == 256 ? 1.0 : normal_cdf(2.0 * x);
    pts.push_back(x);
    masses.push_back(c - prev);
    prev = c;
  }
  return StepCDF::from_atoms(pts, masses);
}

// All mass at or below `cut` moved into a single atom at `target`.
inline StepCDF collapse_below(const StepCDF& f, double cut, double target) {
  std::vector<double> pts{target};
  std::vector<double> masses{0.0};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.breakpoints()[i] <= cut) {
      masses[0] += f.mass(i);
    } else {
      pts.push_back(f.breakpoints()[i]);
      masses.push_back(f.mass(i));
    }
  }
  return StepCDF::from_atoms(pts, masses);
}

}  // namespace lambdaq::testing
