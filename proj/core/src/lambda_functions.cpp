#include "lambdaq/lambda_functions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lambdaq/errors.hpp"

namespace lambdaq {

namespace lv = lambda_variant;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + ": value outside [0, 1]");
}

void check_increasing(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) throw InvalidArgument(std::string(what) + ": non-finite abscissa");
    if (i > 0 && !(xs[i - 1] < xs[i])) {
      throw InvalidArgument(std::string(what) + ": abscissae must be strictly increasing");
    }
  }
}

Monotonicity classify(const std::vector<double>& values) {
  bool up = false;
  bool down = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) up = true;
    if (values[i] < values[i - 1]) down = true;
  }
  if (!up) return Monotonicity::nonincreasing;
  if (!down) return Monotonicity::nondecreasing;
  return Monotonicity::general;
}

// Values in the order they are taken along increasing x.
std::vector<double> value_sequence(const LambdaSpec::Variant& v) {
  return std::visit(overloaded{
                        [](const lv::Constant& c) { return std::vector<double>{c.level}; },
                        [](const lv::StepFn& s) { return s.values; },
                        [](const lv::TwoLevel& t) { return std::vector<double>{t.beta, t.alpha}; },
                        [](const lv::PiecewiseLinear& p) {
                          std::vector<double> out;
                          for (const auto& k : p.knots) out.push_back(k.second);
                          return out;
                        },
                        [](const lv::GridSampled& g) { return g.values; },
                    },
                    v);
}

void validate_variant(const LambdaSpec::Variant& v) {
  std::visit(overloaded{
                 [](const lv::Constant& c) { check_probability(c.level, "constant"); },
                 [](const lv::StepFn& s) {
                   check_increasing(s.breakpoints, "step");
                   if (s.values.size() != s.breakpoints.size() + 1) {
                     throw InvalidArgument("step: values must have one more entry than breakpoints");
                   }
                   for (double x : s.values) check_probability(x, "step");
                 },
                 [](const lv::TwoLevel& t) {
                   if (!(t.alpha > 0.0 && t.alpha < t.beta && t.beta < 1.0)) {
                     throw InvalidArgument("two_level: requires 0 < alpha < beta < 1");
                   }
                   if (!std::isfinite(t.xbar)) throw InvalidArgument("two_level: xbar must be finite");
                 },
                 [](const lv::PiecewiseLinear& p) {
                   if (p.knots.empty()) throw InvalidArgument("piecewise_linear: needs at least one knot");
                   std::vector<double> xs;
                   for (const auto& k : p.knots) {
                     xs.push_back(k.first);
                     check_probability(k.second, "piecewise_linear");
                   }
                   check_increasing(xs, "piecewise_linear");
                 },
                 [](const lv::GridSampled& g) {
                   if (g.xs.empty()) throw InvalidArgument("grid: needs at least one sample");
                   if (g.xs.size() != g.values.size()) throw InvalidArgument("grid: xs and values differ in length");
                   check_increasing(g.xs, "grid");
                   for (double x : g.values) check_probability(x, "grid");
                 },
             },
             v);
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
  if (x <= xs.front()) return vs.front();
  if (x >= xs.back()) return vs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto j = static_cast<std::size_t>(it - xs.begin()) - 1;
  if (x == xs[j]) return vs[j];
  const double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return vs[j] + t * (vs[j + 1] - vs[j]);
}

}  // namespace

LambdaSpec::LambdaSpec(Variant v, std::optional<Monotonicity> declared) : variant_(std::move(v)) {
  validate_variant(variant_);
  const std::vector<double> seq = value_sequence(variant_);
  const Monotonicity actual = classify(seq);
  if (declared) {
    const bool ok = *declared == Monotonicity::general || *declared == actual ||
                    (*declared == Monotonicity::nondecreasing && actual == Monotonicity::nonincreasing &&
                     std::adjacent_find(seq.begin(), seq.end(), std::not_equal_to<>()) == seq.end());
    if (!ok) {
      throw SpecViolation(std::string("Lambda declared ") + to_string(*declared) + " but is " +
                          to_string(actual));
    }
  }
  monotonicity_ = declared.value_or(actual);
  min_value_ = *std::min_element(seq.begin(), seq.end());
  max_value_ = *std::max_element(seq.begin(), seq.end());
  if (min_value_ == 0.0) warnings_.push_back("Lambda reaches 0: left Lambda-quantiles may fail normalization");
  if (max_value_ == 1.0) warnings_.push_back("Lambda reaches 1: right Lambda-quantiles may fail normalization");
  if (min_value_ == max_value_ && (min_value_ == 0.0 || min_value_ == 1.0)) {
    warnings_.push_back("Lambda is identically 0 or 1: Lambda-quantiles are infinite");
  }
}

LambdaSpec LambdaSpec::constant(double level) { return LambdaSpec(lv::Constant{level}); }

LambdaSpec LambdaSpec::step(std::vector<double> breakpoints, std::vector<double> values, Continuity continuity) {
  return LambdaSpec(lv::StepFn{std::move(breakpoints), std::move(values), continuity});
}

LambdaSpec LambdaSpec::two_level(double alpha, double beta, double xbar) {
  return LambdaSpec(lv::TwoLevel{alpha, beta, xbar});
}

LambdaSpec LambdaSpec::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  return LambdaSpec(lv::PiecewiseLinear{std::move(knots)});
}

LambdaSpec LambdaSpec::grid(std::vector<double> xs, std::vector<double> values) {
  return LambdaSpec(lv::GridSampled{std::move(xs), std::move(values)});
}

double LambdaSpec::operator()(double x) const {
  return std::visit(overloaded{
                        [](const lv::Constant& c) { return c.level; },
                        [x](const lv::StepFn& s) {
                          const auto it = std::lower_bound(s.breakpoints.begin(), s.breakpoints.end(), x);
                          const auto i = static_cast<std::size_t>(it - s.breakpoints.begin());
                          if (it != s.breakpoints.end() && *it == x) {
                            return s.continuity == Continuity::right ? s.values[i + 1] : s.values[i];
                          }
                          return s.values[i];
                        },
                        [x](const lv::TwoLevel& t) { return x <= t.xbar ? t.beta : t.alpha; },
                        [x](const lv::PiecewiseLinear& p) {
                          std::vector<double> xs;
                          std::vector<double> vs;
                          for (const auto& k : p.knots) {
                            xs.push_back(k.first);
                            vs.push_back(k.second);
                          }
                          return interpolate(xs, vs, x);
                        },
                        [x](const lv::GridSampled& g) { return interpolate(g.xs, g.values, x); },
                    },
                    variant_);
}

bool operator==(const LambdaSpec& a, const LambdaSpec& b) {
  const bool same = std::visit(
      overloaded{
          [](const lv::Constant& x, const lv::Constant& y) { return x.level == y.level; },
          [](const lv::StepFn& x, const lv::StepFn& y) {
            return x.breakpoints == y.breakpoints && x.values == y.values && x.continuity == y.continuity;
          },
          [](const lv::TwoLevel& x, const lv::TwoLevel& y) {
            return x.alpha == y.alpha && x.beta == y.beta && x.xbar == y.xbar;
          },
          [](const lv::PiecewiseLinear& x, const lv::PiecewiseLinear& y) { return x.knots == y.knots; },
          [](const lv::GridSampled& x, const lv::GridSampled& y) { return x.xs == y.xs && x.values == y.values; },
          [](const auto&, const auto&) { return false; },
      },
      a.variant_, b.variant_);
  return same && a.monotonicity_ == b.monotonicity_;
}

void ZFunction::validate() const {
  if (grid.size() != values.size()) throw InvalidArgument("ZFunction: grid and values differ in length");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw InvalidArgument("ZFunction: grid point outside (0, 1)");
    if (i > 0 && !(grid[i - 1] < grid[i])) throw InvalidArgument("ZFunction: grid must be strictly increasing");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i - 1] < values[i]) {
      throw HypothesisViolation("z is not nonincreasing: z(" + format_double(grid[i - 1]) + ") = " +
                                to_string(values[i - 1]) + " < z(" + format_double(grid[i]) + ") = " +
                                to_string(values[i]));
    }
  }
}

ExtendedReal ZFunction::at(double lambda) const {
  const auto it = std::lower_bound(grid.begin(), grid.end(), lambda);
  if (it == grid.end() || *it != lambda) throw InvalidArgument("ZFunction::at: not a grid point");
  return values[static_cast<std::size_t>(it - grid.begin())];
}

double eval_lambda(const LambdaSpec& spec, double x) { return spec(x); }

Monotonicity validate_monotone(const LambdaSpec& spec) { return classify(value_sequence(spec.variant())); }

LambdaSpec canonical_right_continuous(const LambdaSpec& spec) {
  if (validate_monotone(spec) != Monotonicity::nonincreasing) {
    throw SpecViolation("canonical_right_continuous: Lambda must be nonincreasing");
  }
  if (const auto* s = std::get_if<lv::StepFn>(&spec.variant())) {
    return LambdaSpec(lv::StepFn{s->breakpoints, s->values, Continuity::right}, spec.monotonicity());
  }
  return spec;
}

LambdaSpec lambda_from_z(const ZFunction& z) {
  z.validate();
  std::set<double> finite_values;
  for (const auto& v : z.values) {
    if (v.is_finite()) finite_values.insert(v.value());
  }
  // First index whose value is <= w (values are nonincreasing).
  auto first_at_most = [&](const ExtendedReal& w) -> double {
    for (std::size_t k = 0; k < z.values.size(); ++k) {
      if (z.values[k] <= w) return z.grid[k];
    }
    return 1.0;
  };
  const double left_level = first_at_most(ExtendedReal::neg_inf());
  if (finite_values.empty()) return LambdaSpec(lv::Constant{left_level}, Monotonicity::nonincreasing);
  std::vector<double> bps(finite_values.begin(), finite_values.end());
  std::vector<double> levels{left_level};
  for (double w : bps) levels.push_back(first_at_most(ExtendedReal::finite(w)));
  return LambdaSpec(lv::StepFn{std::move(bps), std::move(levels), Continuity::right}, Monotonicity::nonincreasing);
}

LambdaSpec lambda_from_z_upper_side(const ZFunction& z) {
  z.validate();
  std::set<double> finite_values;
  for (const auto& v : z.values) {
    if (v.is_finite()) finite_values.insert(v.value());
  }
  // Last grid level whose value is > w, or 0.
  auto last_above = [&](const ExtendedReal& w) -> double {
    double level = 0.0;
    for (std::size_t k = 0; k < z.values.size() && z.values[k] > w; ++k) level = z.grid[k];
    return level;
  };
  const double left_level = last_above(ExtendedReal::neg_inf());
  if (finite_values.empty()) return LambdaSpec(lv::Constant{left_level}, Monotonicity::nonincreasing);
  std::vector<double> bps(finite_values.begin(), finite_values.end());
  std::vector<double> levels{left_level};
  for (double w : bps) levels.push_back(last_above(ExtendedReal::finite(w)));
  return LambdaSpec(lv::StepFn{std::move(bps), std::move(levels), Continuity::right}, Monotonicity::nonincreasing);
}

LambdaSpec to_piecewise_linear(const LambdaSpec& spec) {
  const auto* g = std::get_if<lv::GridSampled>(&spec.variant());
  if (!g) return spec;
  std::vector<std::pair<double, double>> knots;
  for (std::size_t i = 0; i < g->xs.size(); ++i) knots.emplace_back(g->xs[i], g->values[i]);
  return LambdaSpec(lv::PiecewiseLinear{std::move(knots)}, spec.monotonicity());
}

namespace {

template <class F>
LambdaSpec map_values(const LambdaSpec& spec, F f) {
  LambdaSpec::Variant v = std::visit(
      overloaded{
          [&](const lv::Constant& c) -> LambdaSpec::Variant { return lv::Constant{f(c.level)}; },
          [&](lv::StepFn s) -> LambdaSpec::Variant {
            for (double& x : s.values) x = f(x);
            return s;
          },
          [&](const lv::TwoLevel& t) -> LambdaSpec::Variant { return lv::TwoLevel{f(t.alpha), f(t.beta), t.xbar}; },
          [&](lv::PiecewiseLinear p) -> LambdaSpec::Variant {
            for (auto& k : p.knots) k.second = f(k.second);
            return p;
          },
          [&](lv::GridSampled g) -> LambdaSpec::Variant {
            for (double& x : g.values) x = f(x);
            return g;
          },
      },
      spec.variant());
  return LambdaSpec(std::move(v));
}

}  // namespace

LambdaSpec scale_towards_zero(const LambdaSpec& spec, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("scale_towards_zero: eps outside [0, 1]");
  return map_values(spec, [eps](double v) { return v - eps * v; });
}

LambdaSpec scale_towards_one(const LambdaSpec& spec, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("scale_towards_one: eps outside [0, 1]");
  return map_values(spec, [eps](double v) { return v + eps * (1.0 - v); });
}

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::nonincreasing:
      return "nonincreasing";
    case Monotonicity::nondecreasing:
      return "nondecreasing";
    case Monotonicity::general:
      return "general";
  }
  return "?";
}

const char* to_string(Continuity c) { return c == Continuity::left ? "left" : "right"; }

}  // namespace lambdaq
