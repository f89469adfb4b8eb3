#include "lambdaq/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lambdaq/errors.hpp"
#include "lambdaq/sampling.hpp"
#include "parallel.hpp"

namespace lambdaq {

namespace {

constexpr std::uint64_t kVerifyPurpose = 7;

// Simplest dyadic rational strictly inside (lo, hi): the one with the
// fewest fractional bits. Falls back to the midpoint.
double simplest_dyadic(double lo, double hi) {
  for (int k = 1; k <= 60; ++k) {
    const double scale = std::ldexp(1.0, k);
    const double d = (std::floor(lo * scale) + 1.0) / scale;
    if (d > lo && d < hi) return d;
  }
  return lo + (hi - lo) / 2.0;
}

ZFunction to_zfunction(const std::map<double, ExtendedReal>& points) {
  ZFunction z;
  for (const auto& [lambda, v] : points) {
    z.grid.push_back(lambda);
    z.values.push_back(v);
  }
  return z;
}

// The proof's verification family: a random F, one of its local dyadic
// pieces B_{x_j, x_j+1}^{lambda_j}, or the dominated dyadic
// B_{x_1, x_k}^{lambda_j} with j < k.
StepCDF verification_input(sampling::Rng& rng, std::size_t trial) {
  const StepCDF f = sampling::random_step_cdf(rng);
  const auto& bp = f.breakpoints();
  const auto& cp = f.cum_probs();
  if (f.size() < 2 || trial % 4 < 2) return f;
  const std::size_t n = f.size();
  const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
  if (trial % 4 == 2) return dyadic({bp[j], bp[j + 1], cp[j]});
  const std::size_t k = std::uniform_int_distribution<std::size_t>(j + 1, n - 1)(rng);
  if (k == 0) return f;
  return dyadic({bp[0], bp[k], cp[j]});
}

}  // namespace

ExtendedReal DyadicClassification::z_value() const {
  switch (verdict) {
    case DyadicVerdict::internal:
      return ExtendedReal::finite(z);
    case DyadicVerdict::boundary_left:
      return ExtendedReal::neg_inf();
    case DyadicVerdict::boundary_right:
      return ExtendedReal::pos_inf();
  }
  return ExtendedReal::finite(z);
}

DyadicClassification probe_dyadic(const FunctionalHandle& t, double lambda, double x, double y) {
  const ExtendedReal v = t(dyadic({x, y, lambda}));
  if (!v.is_finite() || v.value() < x || v.value() > y) {
    throw HypothesisViolation("T(B) = " + to_string(v) + " outside [" + format_double(x) + ", " + format_double(y) +
                              "] at lambda = " + format_double(lambda));
  }
  DyadicClassification c;
  c.lambda = lambda;
  c.x = x;
  c.y = y;
  if (v.value() == x) {
    c.verdict = DyadicVerdict::boundary_left;
  } else if (v.value() == y) {
    c.verdict = DyadicVerdict::boundary_right;
  } else {
    c.verdict = DyadicVerdict::internal;
    c.z = v.value();
  }
  return c;
}

DyadicClassification classify_dyadic(const FunctionalHandle& t, double lambda, double m0, double m_max) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("classify_dyadic: lambda must lie in (0, 1)");
  if (!(m0 > 0.0 && m0 <= m_max)) throw InvalidArgument("classify_dyadic: requires 0 < m0 <= m_max");
  double m = m0;
  for (;;) {
    DyadicClassification c = probe_dyadic(t, lambda, -m, m);
    if (c.verdict == DyadicVerdict::internal || m >= m_max) return c;
    m = std::min(2.0 * m, m_max);
  }
}

ZFunction build_z(const FunctionalHandle& t, const ZOptions& options) {
  if (options.grid_n < 2) throw InvalidArgument("build_z: grid_n must be at least 2");
  const std::size_t n = options.grid_n;
  const double denom = static_cast<double>(n + 1);
  auto classify = [&](double lambda) { return classify_dyadic(t, lambda, options.m0, options.m_max).z_value(); };

  const auto coarse = detail::parallel_map<ExtendedReal>(
      n, [&](std::size_t k) { return classify(static_cast<double>(k + 1) / denom); });
  std::map<double, ExtendedReal> points;
  for (std::size_t k = 0; k < n; ++k) points.emplace(static_cast<double>(k + 1) / denom, coarse[k]);
  ZFunction z = to_zfunction(points);
  z.validate();

  if (options.refine_iterations > 0) {
    std::vector<std::size_t> jumps;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (coarse[k] != coarse[k + 1]) jumps.push_back(k);
    }
    const bool minus = options.side == QuantileSide::minus;
    using Probe = std::vector<std::pair<double, ExtendedReal>>;
    const auto refined = detail::parallel_map<Probe>(jumps.size(), [&](std::size_t j) {
      const std::size_t k = jumps[j];
      double lo = static_cast<double>(k + 1) / denom;
      double hi = static_cast<double>(k + 2) / denom;
      const ExtendedReal z_lo = coarse[k];
      const ExtendedReal z_hi = coarse[k + 1];
      Probe probes;
      for (int it = 0; it < options.refine_iterations; ++it) {
        const double d = simplest_dyadic(lo, hi);
        if (!(d > lo && d < hi)) break;
        const ExtendedReal v = classify(d);
        probes.emplace_back(d, v);
        // Minus side locates the first level reaching z_hi, plus side the
        // last level keeping z_lo.
        const bool go_right = minus ? v > z_hi : !(v < z_lo);
        (go_right ? lo : hi) = d;
      }
      return probes;
    });
    for (const auto& probes : refined) {
      for (const auto& [lambda, v] : probes) points.emplace(lambda, v);
    }
    z = to_zfunction(points);
    z.validate();
  }
  return z;
}

bool ReconstructionResult::prechecks_passed() const {
  for (const auto& r : prechecks) {
    if (!r.passed()) return false;
  }
  return true;
}

ReconstructionResult reconstruct(const FunctionalHandle& t, const ReconstructOptions& options) {
  ReconstructionResult result;
  result.side = options.side;
  const bool minus = options.side == QuantileSide::minus;

  result.prechecks.push_back(check_normalization(t, default_normalization_points()));
  result.prechecks.push_back(check_monotonicity(t, options.precheck_trials, options.seed));
  result.prechecks.push_back(check_locality(t, options.precheck_trials, options.seed));
  const auto direction = minus ? SemicontinuityDirection::lower : SemicontinuityDirection::upper;
  if (result.prechecks[1].passed()) {
    result.prechecks.push_back(check_semicontinuity(t, direction, options.precheck_trials, options.seed));
  } else {
    CheckReport skipped;
    skipped.axiom = std::string("semicontinuity_") + to_string(direction);
    skipped.verdict = Verdict::fail;
    skipped.seed = options.seed;
    skipped.note = "not run: the functional is not monotone";
    result.prechecks.push_back(std::move(skipped));
  }

  CheckReport& ver = result.verification;
  ver.axiom = "reconstruction_roundtrip";
  ver.seed = options.seed;

  ZOptions zopt;
  zopt.grid_n = options.grid_n;
  zopt.refine_iterations = options.refine_iterations;
  zopt.side = options.side;
  try {
    result.z = build_z(t, zopt);
  } catch (const HypothesisViolation& e) {
    ver.verdict = Verdict::fail;
    ver.note = e.what();
    return result;
  }

  const auto& vals = result.z->values;
  const bool all_left = std::all_of(vals.begin(), vals.end(), [](const ExtendedReal& v) { return v.is_neg_inf(); });
  const bool all_right = std::all_of(vals.begin(), vals.end(), [](const ExtendedReal& v) { return v.is_pos_inf(); });
  if ((minus && all_left) || (!minus && all_right)) {
    ver.verdict = Verdict::fail;
    ver.note = minus ? "T is always at the lower atom of dyadic distributions; impossible for a lower "
                       "semicontinuous functional"
                     : "T is always at the upper atom of dyadic distributions; impossible for an upper "
                       "semicontinuous functional";
    return result;
  }

  const LambdaSpec inf_side = lambda_from_z(*result.z);
  const LambdaSpec sup_side = lambda_from_z_upper_side(*result.z);
  result.lambda_spec = minus ? inf_side : sup_side;
  const QuantileKind kind = minus ? QuantileKind::q_minus : QuantileKind::q_plus;

  struct Outcome {
    int status = 0;  // 0 equal, 1 flagged, 2 failed
    std::optional<Witness> witness;
  };
  const auto outcomes = detail::parallel_map<Outcome>(options.verify_trials, [&](std::size_t i) -> Outcome {
    sampling::Rng rng = sampling::trial_rng(options.seed, kVerifyPurpose, i);
    const StepCDF f = verification_input(rng, i);
    const ExtendedReal v = t(f);
    const ExtendedReal q = lambda_quantile(f, *result.lambda_spec, kind);
    if (v == q) return {};
    const ExtendedReal lo = lambda_quantile(f, sup_side, kind);
    const ExtendedReal hi = lambda_quantile(f, inf_side, kind);
    if (lo <= v && v <= hi) return {1, std::nullopt};
    Witness w;
    w.distributions = {f};
    w.values = {v, q};
    w.note = "T(F) differs from the recovered quantile beyond grid resolution";
    return {2, std::move(w)};
  });
  ver.trials = outcomes.size();
  for (const auto& o : outcomes) {
    if (o.status == 1) ++ver.flagged;
    if (o.status == 2 && !ver.witness) {
      ver.verdict = Verdict::fail;
      ver.witness = o.witness;
    }
  }
  return result;
}

bool verification_witness_reproduces(const FunctionalHandle& t, const ReconstructionResult& result) {
  const CheckReport& ver = result.verification;
  if (ver.passed() || !ver.witness || !result.z || !result.lambda_spec) return false;
  const StepCDF& f = ver.witness->distributions.at(0);
  const QuantileKind kind = result.side == QuantileSide::minus ? QuantileKind::q_minus : QuantileKind::q_plus;
  const ExtendedReal v = t(f);
  const ExtendedReal lo = lambda_quantile(f, lambda_from_z_upper_side(*result.z), kind);
  const ExtendedReal hi = lambda_quantile(f, lambda_from_z(*result.z), kind);
  return v < lo || v > hi;
}

const char* to_string(DyadicVerdict v) {
  switch (v) {
    case DyadicVerdict::internal:
      return "internal";
    case DyadicVerdict::boundary_left:
      return "boundary_left";
    case DyadicVerdict::boundary_right:
      return "boundary_right";
  }
  return "?";
}

}  // namespace lambdaq
