#pragma once

#include <stdexcept>
#include <string>

namespace lambdaq {

// Malformed arguments to a constructor or operation (bad probabilities,
// unsorted breakpoints, non-finite reals).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability-loss function that violates a declared or required shape,
// e.g. declared nonincreasing but increasing somewhere, or touching 0/1 where
// a finite Lambda V@R is requested.
class SpecViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A black-box functional that violates a hypothesis an algorithm relies on
// (monotonicity before a semicontinuity check, dyadic bounds, monotone z).
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An axiom check that could not produce enough usable trials.
class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lambdaq
