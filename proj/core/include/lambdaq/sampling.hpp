#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lambdaq/distributions.hpp"
#include "lambdaq/lambda_functions.hpp"

namespace lambdaq::sampling {

using Rng = std::mt19937_64;

// Independent stream for (seed, purpose, trial). Trials of a check draw from
// their own stream, so results do not depend on evaluation order.
Rng trial_rng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t trial);

// Generated distributions use dyadic probabilities (multiples of 2^-10) and
// breakpoints on a 2^-6 grid in [-support, support]. Mixtures with dyadic
// weights and 1/2^k shifts of such distributions are computed without
// rounding.
struct CdfShape {
  std::size_t max_atoms = 8;
  double support = 10.0;
};

StepCDF random_step_cdf(Rng& rng, const CdfShape& shape = {});

// Dyadic number in (0, 1) with at most `bits` fractional bits.
double random_dyadic_weight(Rng& rng, int bits = 6);

// F' with F' >=_st F (F'(x) <= F(x) everywhere): a random subset of atoms
// is moved strictly to the right.
StepCDF push_mass_right(const StepCDF& f, Rng& rng);

// Random nonincreasing step Lambda with values strictly inside (0, 1).
LambdaSpec random_nonincreasing_step(Rng& rng, std::size_t max_jumps = 4, double support = 10.0);

// Random Lambda of any variant (constant, step with either continuity and any
// shape, two-level, piecewise-linear), values in [0, 1].
LambdaSpec random_lambda(Rng& rng, double support = 10.0);

}  // namespace lambdaq::sampling
