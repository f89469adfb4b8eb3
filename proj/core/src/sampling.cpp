#include "lambdaq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lambdaq::sampling {

namespace {

constexpr double kProbScale = 1024.0;
constexpr double kGridScale = 64.0;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Point on the 2^-6 grid; half of the draws are integers so that
// distributions often share atoms with each other and with Lambda jumps.
double random_point(Rng& rng, double support) {
  if (std::bernoulli_distribution(0.5)(rng)) {
    const auto s = static_cast<long>(support);
    return static_cast<double>(std::uniform_int_distribution<long>(-s, s)(rng));
  }
  return std::round(uniform(rng, -support, support) * kGridScale) / kGridScale;
}

std::vector<double> distinct_points(Rng& rng, std::size_t n, double support) {
  std::set<double> pts;
  while (pts.size() < n) pts.insert(random_point(rng, support));
  return {pts.begin(), pts.end()};
}

// n strictly increasing multiples of 2^-10 in (0, 1], the last one 1.
std::vector<double> random_cum(Rng& rng, std::size_t n) {
  std::set<long> cuts;
  const auto top = static_cast<long>(kProbScale);
  while (cuts.size() + 1 < n) cuts.insert(std::uniform_int_distribution<long>(1, top - 1)(rng));
  std::vector<double> cum;
  for (long c : cuts) cum.push_back(static_cast<double>(c) / kProbScale);
  cum.push_back(1.0);
  return cum;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t purpose, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

StepCDF random_step_cdf(Rng& rng, const CdfShape& shape) {
  const std::size_t n = uniform_index(rng, 1, shape.max_atoms);
  return StepCDF(distinct_points(rng, n, shape.support), random_cum(rng, n));
}

double random_dyadic_weight(Rng& rng, int bits) {
  const long top = 1L << bits;
  return static_cast<double>(std::uniform_int_distribution<long>(1, top - 1)(rng)) / static_cast<double>(top);
}

StepCDF push_mass_right(const StepCDF& f, Rng& rng) {
  std::vector<double> points = f.breakpoints();
  std::vector<double> masses;
  for (std::size_t i = 0; i < f.size(); ++i) masses.push_back(f.mass(i));
  bool moved = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::bernoulli_distribution(0.5)(rng) || (!moved && i + 1 == points.size())) {
      const double step = std::ceil(uniform(rng, 0.0, 5.0) * kGridScale) / kGridScale;
      points[i] += std::max(step, 1.0 / kGridScale);
      moved = true;
    }
  }
  return StepCDF::from_atoms(points, masses);
}

LambdaSpec random_nonincreasing_step(Rng& rng, std::size_t max_jumps, double support) {
  const std::size_t jumps = uniform_index(rng, 0, max_jumps);
  std::vector<double> bps = distinct_points(rng, jumps, support);
  std::vector<double> values;
  for (std::size_t i = 0; i <= jumps; ++i) values.push_back(uniform(rng, 0.02, 0.98));
  std::sort(values.begin(), values.end(), std::greater<>());
  const auto cont = std::bernoulli_distribution(0.5)(rng) ? Continuity::right : Continuity::left;
  return LambdaSpec::step(std::move(bps), std::move(values), cont);
}

LambdaSpec random_lambda(Rng& rng, double support) {
  switch (uniform_index(rng, 0, 4)) {
    case 0:
      return LambdaSpec::constant(std::bernoulli_distribution(0.5)(rng) ? random_dyadic_weight(rng)
                                                                          : uniform(rng, 0.0, 1.0));
    case 1: {
      const double a = uniform(rng, 0.01, 0.9);
      const double b = uniform(rng, a + 0.001, 0.999);
      return LambdaSpec::two_level(a, b, random_point(rng, support));
    }
    case 2: {
      const std::size_t k = uniform_index(rng, 1, 5);
      std::vector<std::pair<double, double>> knots;
      for (double x : distinct_points(rng, k, support)) knots.emplace_back(x, uniform(rng, 0.0, 1.0));
      return LambdaSpec::piecewise_linear(std::move(knots));
    }
    default: {
      const std::size_t jumps = uniform_index(rng, 0, 5);
      std::vector<double> values;
      for (std::size_t i = 0; i <= jumps; ++i) {
        // Occasional exact 0/1 and dyadic levels exercise ties with F.
        const double u = uniform(rng, 0.0, 1.0);
        if (u < 0.1) values.push_back(0.0);
        else if (u < 0.2) values.push_back(1.0);
        else if (u < 0.5) values.push_back(random_dyadic_weight(rng, 4));
        else values.push_back(uniform(rng, 0.0, 1.0));
      }
      const auto cont = std::bernoulli_distribution(0.5)(rng) ? Continuity::right : Continuity::left;
      return LambdaSpec::step(distinct_points(rng, jumps, support), std::move(values), cont);
    }
  }
}

}  // namespace lambdaq::sampling
