#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lambdaq/axiom_checks.hpp"
#include "lambdaq/lambda_functions.hpp"
#include "lambdaq/quantile_engine.hpp"

namespace lambdaq {

enum class DyadicVerdict { internal, boundary_left, boundary_right };

struct DyadicClassification {
  double lambda = 0.0;
  DyadicVerdict verdict = DyadicVerdict::internal;
  double z = 0.0;  // meaningful for internal verdicts only
  double x = 0.0;  // bracket used
  double y = 0.0;

  // +inf for boundary_right, -inf for boundary_left.
  ExtendedReal z_value() const;
};

inline constexpr double kDefaultBracketStart = 1.0;
inline constexpr double kDefaultBracketMax = 1073741824.0;  // 2^30

// Evaluates T on lambda * delta_x + (1 - lambda) * delta_y for one bracket.
// Throws HypothesisViolation if the value is outside [x, y].
DyadicClassification probe_dyadic(const FunctionalHandle& t, double lambda, double x, double y);

// Probes symmetric brackets (-m, m), doubling m from m0 until the value is
// internal or m reaches m_max.
DyadicClassification classify_dyadic(const FunctionalHandle& t, double lambda, double m0 = kDefaultBracketStart,
                                     double m_max = kDefaultBracketMax);

struct ZOptions {
  std::size_t grid_n = 512;
  double m0 = kDefaultBracketStart;
  double m_max = kDefaultBracketMax;
  // Bisection steps spent between adjacent grid levels whose z values
  // differ; 0 disables refinement.
  int refine_iterations = 20;
  QuantileSide side = QuantileSide::minus;
};

// z on the levels k / (grid_n + 1), k = 1..grid_n, plus the refinement
// levels. Throws HypothesisViolation when z is not nonincreasing.
ZFunction build_z(const FunctionalHandle& t, const ZOptions& options = {});

struct ReconstructOptions {
  QuantileSide side = QuantileSide::minus;
  std::size_t grid_n = 512;
  std::size_t verify_trials = 1000;
  std::size_t precheck_trials = 200;
  std::uint64_t seed = 42;
  int refine_iterations = 20;
};

struct ReconstructionResult {
  std::optional<ZFunction> z;
  std::optional<LambdaSpec> lambda_spec;
  QuantileSide side = QuantileSide::minus;
  std::vector<CheckReport> prechecks;
  CheckReport verification;

  bool prechecks_passed() const;
};

// Prechecks (normalization, monotonicity, locality, semicontinuity on the
// matching side), then z, then Lambda by generalized inverse, then a
// comparison of T with the recovered quantile on random distributions.
//
// A trial whose value differs from the recovered quantile but lies between
// the quantiles of the two grid-resolution inverses of z is counted as
// flagged; any other difference fails the verification.
ReconstructionResult reconstruct(const FunctionalHandle& t, const ReconstructOptions& options = {});

// Re-evaluates the verification witness of a failed reconstruction.
bool verification_witness_reproduces(const FunctionalHandle& t, const ReconstructionResult& result);

const char* to_string(DyadicVerdict v);

}  // namespace lambdaq
