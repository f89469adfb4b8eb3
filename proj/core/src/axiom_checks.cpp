#include "lambdaq/axiom_checks.hpp"

#include <algorithm>
#include <cmath>

#include "lambdaq/errors.hpp"
#include "lambdaq/sampling.hpp"
#include "parallel.hpp"

namespace lambdaq {

namespace {

using sampling::Rng;

enum Purpose : std::uint64_t {
  kMonotonicity = 1,
  kLocality,
  kSemicontinuity,
  kCxls,
  kQuasi,
  kOrdinal,
};

constexpr int kShiftSteps = 16;  // N_max = 2^16
constexpr int kLeakSteps = 40;   // eps down to 2^-40

struct TrialOutcome {
  enum class Status { ok, skipped, failed } status = Status::ok;
  std::optional<Witness> witness;
};

TrialOutcome failed(Witness w) { return {TrialOutcome::Status::failed, std::move(w)}; }
TrialOutcome skipped() { return {TrialOutcome::Status::skipped, std::nullopt}; }

CheckReport merge(std::string axiom, std::uint64_t seed, std::vector<TrialOutcome> outcomes) {
  CheckReport r;
  r.axiom = std::move(axiom);
  r.seed = seed;
  r.trials = outcomes.size();
  for (auto& o : outcomes) {
    if (o.status == TrialOutcome::Status::skipped) ++r.skipped;
    if (o.status == TrialOutcome::Status::failed && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = std::move(o.witness);
    }
  }
  return r;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool close(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (a.is_finite() && b.is_finite()) return std::abs(a.value() - b.value()) <= tol;
  return a == b;
}

ExtendedReal translate(const ExtendedReal& v, double delta) {
  return v.is_finite() ? ExtendedReal::finite(v.value() + delta) : v;
}

bool is_breakpoint(const StepCDF& f, double x) {
  return std::binary_search(f.breakpoints().begin(), f.breakpoints().end(), x);
}

// ---- locality perturbations -------------------------------------------------

struct Window {
  double a;
  double b;
};

// Window ends are odd multiples of 1/128, so they never coincide with the
// 1/64-grid breakpoints of generated distributions.
std::optional<Window> pick_window(const StepCDF& f, double v, Rng& rng) {
  constexpr double scale = 128.0;
  if (std::abs(v) > 1e9) return std::nullopt;
  const double s = v * scale;
  auto lo = static_cast<long long>(std::floor(s));
  if (static_cast<double>(lo) == s) --lo;
  if (lo % 2 == 0) --lo;
  auto hi = static_cast<long long>(std::ceil(s));
  if (static_cast<double>(hi) == s) ++hi;
  if (hi % 2 == 0) ++hi;
  lo -= 2 * uniform_int(rng, 0, 48);
  hi += 2 * uniform_int(rng, 0, 48);
  const Window w{static_cast<double>(lo) / scale, static_cast<double>(hi) / scale};
  if (!(w.a < v && v < w.b) || is_breakpoint(f, w.a) || is_breakpoint(f, w.b)) return std::nullopt;
  return w;
}

enum class Lower { keep, collapse, stretch, split };
enum class Upper { keep, single, stretch, spread };

// G equal to F on (a, b): the atoms inside the window are copied, the mass
// F(a) at or below a and the mass 1 - F(b-) at or above b are rearranged
// directly in cumulative space so no rounding touches the window.
StepCDF rebuild_outside(const StepCDF& f, const Window& w, Lower lower, Upper upper, Rng& rng) {
  const auto& bp = f.breakpoints();
  const auto& cp = f.cum_probs();
  const double fa = f(w.a);
  const double fb = f.left_limit(w.b);
  std::vector<double> xs;
  std::vector<double> cs;

  if (fa > 0.0) {
    switch (lower) {
      case Lower::keep:
        for (std::size_t i = 0; i < bp.size() && bp[i] <= w.a; ++i) {
          xs.push_back(bp[i]);
          cs.push_back(cp[i]);
        }
        break;
      case Lower::collapse:
        xs.push_back(w.a - uniform_int(rng, 0, 128) / 64.0);
        cs.push_back(fa);
        break;
      case Lower::stretch: {
        const double d = std::pow(10.0, uniform_int(rng, 1, 6));
        for (std::size_t i = 0; i < bp.size() && bp[i] <= w.a; ++i) {
          xs.push_back(bp[i] - d);
          cs.push_back(cp[i]);
        }
        break;
      }
      case Lower::split: {
        const int r = uniform_int(rng, 2, 5);
        const double step = uniform_int(rng, 1, 64) / 64.0;
        for (int j = 1; j <= r; ++j) {
          xs.push_back(w.a - step * (r - j));
          cs.push_back(j == r ? fa : fa * j / r);
        }
        break;
      }
    }
  }
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (bp[i] > w.a && bp[i] < w.b) {
      xs.push_back(bp[i]);
      cs.push_back(cp[i]);
    }
  }
  if (fb < 1.0) {
    switch (upper) {
      case Upper::keep:
        for (std::size_t i = 0; i < bp.size(); ++i) {
          if (bp[i] >= w.b) {
            xs.push_back(bp[i]);
            cs.push_back(cp[i]);
          }
        }
        break;
      case Upper::single:
        xs.push_back(w.b + uniform_int(rng, 0, 128) / 64.0);
        cs.push_back(1.0);
        break;
      case Upper::stretch: {
        const double d = std::pow(10.0, uniform_int(rng, 1, 6));
        for (std::size_t i = 0; i < bp.size(); ++i) {
          if (bp[i] >= w.b) {
            xs.push_back(bp[i] + d);
            cs.push_back(cp[i]);
          }
        }
        break;
      }
      case Upper::spread: {
        const int r = uniform_int(rng, 2, 5);
        const double step = uniform_int(rng, 1, 64) / 64.0;
        for (int j = 1; j <= r; ++j) {
          xs.push_back(w.b + step * (j - 1));
          cs.push_back(j == r ? 1.0 : fb + (1.0 - fb) * j / r);
        }
        break;
      }
    }
  }
  return StepCDF(std::move(xs), std::move(cs));
}

bool agree_on(const StepCDF& f, const StepCDF& g, double a, double b) {
  if (f(a) != g(a)) return false;
  for (const auto* h : {&f, &g}) {
    for (double p : h->breakpoints()) {
      if (p > a && p < b && f(p) != g(p)) return false;
    }
  }
  return true;
}

StepCDF random_local_perturbation(const StepCDF& f, const Window& w, Rng& rng) {
  const auto lower = static_cast<Lower>(uniform_int(rng, 0, 3));
  const auto upper = static_cast<Upper>(uniform_int(rng, 0, 3));
  return rebuild_outside(f, w, lower, upper, rng);
}

// ---- semicontinuity sequences ------------------------------------------------

// Mass eps leaked to an atom left of the support (F_eps decreases to F as
// eps -> 0) or right of it (F_eps increases to F).
StepCDF leak(const StepCDF& f, double eps, SemicontinuityDirection d) {
  std::vector<double> xs;
  std::vector<double> cs;
  if (d == SemicontinuityDirection::lower) {
    xs.push_back(f.essinf() - 1.0);
    cs.push_back(eps);
    for (std::size_t i = 0; i < f.size(); ++i) {
      xs.push_back(f.breakpoints()[i]);
      cs.push_back(eps + (1.0 - eps) * f.cum_probs()[i]);
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      xs.push_back(f.breakpoints()[i]);
      cs.push_back((1.0 - eps) * f.cum_probs()[i]);
    }
    xs.push_back(f.esssup() + 1.0);
    cs.push_back(1.0);
  }
  cs.back() = 1.0;
  return StepCDF(std::move(xs), std::move(cs));
}

Witness make_witness(std::vector<StepCDF> dists, std::vector<ExtendedReal> values, std::string note) {
  Witness w;
  w.distributions = std::move(dists);
  w.values = std::move(values);
  w.note = std::move(note);
  return w;
}

// For a monotone sequence: lower sequences are stochastically increasing in
// the index, so T must be nondecreasing along them; upper ones the reverse.
std::optional<Witness> check_sequence(const FunctionalHandle& t, const StepCDF& f, const ExtendedReal& v,
                                      const std::vector<StepCDF>& seq, SemicontinuityDirection d, double transport,
                                      double tol, const char* family) {
  std::vector<ExtendedReal> vals;
  vals.reserve(seq.size());
  for (const auto& g : seq) vals.push_back(t(g));
  for (std::size_t i = 1; i < vals.size(); ++i) {
    const bool bad = d == SemicontinuityDirection::lower ? vals[i] < vals[i - 1] : vals[i] > vals[i - 1];
    if (bad) {
      Witness w = make_witness({seq[i - 1], seq[i]}, {vals[i - 1], vals[i]},
                               std::string(family) + ": values not monotone along the sequence");
      w.params = {{"case", 1.0}, {"index", static_cast<double>(i)}};
      return w;
    }
  }
  const ExtendedReal& last = vals.back();
  if (!close(last, v, tol) && !close(last, translate(v, transport), tol)) {
    Witness w = make_witness({f, seq.back()}, {v, last}, std::string(family) + ": limit value differs from T(F)");
    w.params = {{"case", 0.0}, {"transport", transport}, {"tolerance", tol}};
    return w;
  }
  return std::nullopt;
}

bool sequence_violation(const FunctionalHandle& t, const Witness& w, bool lower) {
  const auto& d = w.distributions;
  const ExtendedReal a = t(d[0]);
  const ExtendedReal b = t(d[1]);
  if (w.param("case") == 0.0) {
    const double tol = w.param("tolerance");
    return !close(b, a, tol) && !close(b, translate(a, w.param("transport")), tol);
  }
  // d[1] follows d[0] in the sequence.
  const StochOrder o = stoch_order(d[1], d[0]);
  if (lower) return (o == StochOrder::dominates || o == StochOrder::equal) && b < a;
  return (o == StochOrder::dominated || o == StochOrder::equal) && b > a;
}

MonotoneTransform random_transform(Rng& rng) {
  const int k = uniform_int(rng, 1, 4);
  std::vector<double> ts;
  while (static_cast<int>(ts.size()) < k) {
    const double u = uniform_int(rng, -12 * 16, 12 * 16) / 16.0;
    if (std::find(ts.begin(), ts.end(), u) == ts.end()) ts.push_back(u);
  }
  std::sort(ts.begin(), ts.end());
  std::vector<std::pair<double, double>> knots;
  double y = uniform_int(rng, -5 * 16, 5 * 16) / 16.0;
  knots.emplace_back(ts[0], y);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double slope = std::pow(2.0, uniform(rng, -2.0, 2.0));
    y += slope * (ts[i] - ts[i - 1]);
    knots.emplace_back(ts[i], y);
  }
  return MonotoneTransform(std::move(knots));
}

StepCDF random_cdf(Rng& rng) { return sampling::random_step_cdf(rng); }

// Random F stretched by 4^s, s = 0..4, so values far from the origin are
// reached; stretching by a power of two keeps the grid exact.
StepCDF scaled_cdf(Rng& rng) {
  const StepCDF f = random_cdf(rng);
  const double scale = std::ldexp(1.0, 2 * uniform_int(rng, 0, 4));
  std::vector<double> xs = f.breakpoints();
  for (double& x : xs) x *= scale;
  return StepCDF(std::move(xs), f.cum_probs());
}

// B_{-m, m}^lambda with m = 2^k: the probing family that exposes internal
// values at any scale.
StepCDF wide_dyadic(Rng& rng) {
  const double m = std::ldexp(1.0, uniform_int(rng, 0, 12));
  return dyadic({-m, m, sampling::random_dyadic_weight(rng, 10)});
}

}  // namespace

// ---- handles -----------------------------------------------------------------

FunctionalHandle::FunctionalHandle(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {
  if (!fn_) throw InvalidArgument("FunctionalHandle: empty evaluation function");
}

FunctionalHandle quantile_functional(const LambdaSpec& spec, QuantileKind kind) {
  LambdaSpec s = spec.is_grid() ? to_piecewise_linear(spec) : spec;
  return FunctionalHandle(std::string("q_") + to_string(kind),
                          [s, kind](const StepCDF& f) { return lambda_quantile(f, s, kind); });
}

FunctionalHandle classic_functional(double level, QuantileSide side) {
  if (!(level >= 0.0 && level <= 1.0)) throw InvalidArgument("classic_functional: level outside [0, 1]");
  return FunctionalHandle(std::string("classic_") + to_string(side) + "(" + format_double(level) + ")",
                          [level, side](const StepCDF& f) { return classic_quantile(f, level, side); });
}

FunctionalHandle mean_functional() {
  return FunctionalHandle("mean", [](const StepCDF& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m += f.breakpoints()[i] * f.mass(i);
    return ExtendedReal::finite(m);
  });
}

FunctionalHandle constant_functional(double value) {
  const ExtendedReal v = ExtendedReal::finite(value);
  return FunctionalHandle("constant(" + format_double(value) + ")", [v](const StepCDF&) { return v; });
}

FunctionalHandle esssup_functional() {
  return FunctionalHandle("esssup", [](const StepCDF& f) { return ExtendedReal::finite(f.esssup()); });
}

FunctionalHandle essinf_functional() {
  return FunctionalHandle("essinf", [](const StepCDF& f) { return ExtendedReal::finite(f.essinf()); });
}

// ---- transforms --------------------------------------------------------------

MonotoneTransform::MonotoneTransform(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw InvalidArgument("MonotoneTransform: needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw InvalidArgument("MonotoneTransform: knots must be finite");
    }
    if (i > 0 && !(knots_[i - 1].first < knots_[i].first && knots_[i - 1].second < knots_[i].second)) {
      throw InvalidArgument("MonotoneTransform: knots must be strictly increasing in both coordinates");
    }
  }
}

double MonotoneTransform::operator()(double u) const {
  if (u <= knots_.front().first) return knots_.front().second + (u - knots_.front().first);
  if (u >= knots_.back().first) return knots_.back().second + (u - knots_.back().first);
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u,
                                   [](double x, const std::pair<double, double>& k) { return x < k.first; });
  const auto& [t1, y1] = *it;
  const auto& [t0, y0] = *(it - 1);
  if (u == t0) return y0;
  return y0 + (u - t0) * (y1 - y0) / (t1 - t0);
}

StepCDF apply_transform(const StepCDF& f, const MonotoneTransform& phi) {
  std::vector<double> xs;
  xs.reserve(f.size());
  for (double b : f.breakpoints()) xs.push_back(phi(b));
  return StepCDF(std::move(xs), f.cum_probs());
}

double Witness::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw InvalidArgument("witness has no parameter '" + key + "'");
}

// ---- checks ------------------------------------------------------------------

std::vector<double> default_normalization_points() {
  return {-1000.0, -10.5, -3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.0, 7.75, 100.0};
}

CheckReport check_normalization(const FunctionalHandle& t, const std::vector<double>& xs) {
  if (xs.empty()) throw InvalidArgument("check_normalization: no points");
  std::vector<TrialOutcome> outcomes;
  for (double x : xs) {
    const StepCDF d = point_mass(x);
    const ExtendedReal v = t(d);
    if (v != ExtendedReal::finite(x)) {
      Witness w = make_witness({d}, {v}, "T(delta_x) != x");
      w.params = {{"x", x}};
      outcomes.push_back(failed(std::move(w)));
    } else {
      outcomes.push_back({});
    }
  }
  return merge("normalization", 0, std::move(outcomes));
}

CheckReport check_monotonicity(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("check_monotonicity: trials must be positive");
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kMonotonicity, i);
    const StepCDF f2 = random_cdf(rng);
    const StepCDF f1 = sampling::push_mass_right(f2, rng);
    const ExtendedReal v1 = t(f1);
    const ExtendedReal v2 = t(f2);
    if (v1 < v2) return failed(make_witness({f1, f2}, {v1, v2}, "F1 >=_st F2 but T(F1) < T(F2)"));
    return {};
  });
  return merge("monotonicity", seed, std::move(outcomes));
}

CheckReport check_locality(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("check_locality: trials must be positive");
  constexpr int kPerturbations = 4;
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kLocality, i);
    const StepCDF f = random_cdf(rng);
    const ExtendedReal v = t(f);
    if (!v.is_finite()) return skipped();
    const auto win = pick_window(f, v.value(), rng);
    if (!win) return skipped();
    for (int k = 0; k < kPerturbations; ++k) {
      const StepCDF g = random_local_perturbation(f, *win, rng);
      const ExtendedReal vg = t(g);
      if (vg != v) {
        Witness w = make_witness({f, g}, {v, vg}, "G = F on (a, b) containing T(F) but T(G) != T(F)");
        w.params = {{"a", win->a}, {"b", win->b}};
        return failed(std::move(w));
      }
    }
    return {};
  });
  CheckReport r = merge("locality", seed, std::move(outcomes));
  r.note = "structured perturbations: collapse below, tail stretch, atom split, spread above";
  return r;
}

CheckReport check_semicontinuity(const FunctionalHandle& t, SemicontinuityDirection direction, std::size_t trials,
                                 std::uint64_t seed, double tolerance) {
  if (trials == 0) throw InvalidArgument("check_semicontinuity: trials must be positive");
  if (!(tolerance >= 0.0)) throw InvalidArgument("check_semicontinuity: tolerance must be nonnegative");
  const CheckReport mono = check_monotonicity(t, trials, seed);
  if (!mono.passed()) {
    throw HypothesisViolation("semicontinuity check needs a monotone functional; " + t.name() +
                              " failed the monotonicity check");
  }
  const bool lower = direction == SemicontinuityDirection::lower;
  const auto shift_dir = lower ? ShiftDirection::down_to : ShiftDirection::up_to;
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kSemicontinuity, i);
    const StepCDF f = random_cdf(rng);
    const ExtendedReal v = t(f);

    std::vector<StepCDF> shifts;
    for (int k = 0; k <= kShiftSteps; ++k) shifts.push_back(shift_sequence(f, 1u << k, shift_dir));
    const double n_max = std::ldexp(1.0, kShiftSteps);
    const double transport = lower ? -1.0 / n_max : 1.0 / n_max;
    if (auto w = check_sequence(t, f, v, shifts, direction, transport, tolerance, "shift")) {
      return failed(std::move(*w));
    }

    std::vector<StepCDF> leaks;
    for (int k = 1; k <= kLeakSteps; ++k) leaks.push_back(leak(f, std::ldexp(1.0, -k), direction));
    if (auto w = check_sequence(t, f, v, leaks, direction, 0.0, tolerance, "mass leak")) {
      return failed(std::move(*w));
    }
    return {};
  });
  return merge(std::string("semicontinuity_") + to_string(direction), seed, std::move(outcomes));
}

CheckReport check_cxls(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("check_cxls: trials must be positive");
  constexpr int kMixtures = 3;
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kCxls, i);
    const StepCDF f1 = random_cdf(rng);
    const ExtendedReal g = t(f1);
    if (!g.is_finite()) return skipped();
    std::optional<StepCDF> f2;
    if (i % 2 == 0) {
      if (const auto win = pick_window(f1, g.value(), rng)) f2 = random_local_perturbation(f1, *win, rng);
    } else {
      f2 = random_cdf(rng);
    }
    if (!f2 || t(*f2) != g) return skipped();
    for (int k = 0; k < kMixtures; ++k) {
      const double alpha = sampling::random_dyadic_weight(rng);
      const StepCDF m = mixture(f1, *f2, alpha);
      const ExtendedReal vm = t(m);
      if (vm != g) {
        Witness w = make_witness({f1, *f2, m}, {g, g, vm}, "T(F1) = T(F2) but the mixture value differs");
        w.params = {{"alpha", alpha}};
        return failed(std::move(w));
      }
    }
    return {};
  });
  CheckReport r = merge("cxls", seed, std::move(outcomes));
  if ((r.trials - r.skipped) * 10 < r.trials) {
    throw CheckError("cxls: only " + std::to_string(r.trials - r.skipped) + " of " + std::to_string(r.trials) +
                     " trials produced a pair with equal finite values");
  }
  return r;
}

CheckReport check_quasi(const FunctionalHandle& t, QuasiMode mode, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("check_quasi: trials must be positive");
  const bool concave = mode == QuasiMode::quasiconcave;
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kQuasi + (concave ? 0 : 100), i);
    const StepCDF f1 = random_cdf(rng);
    const StepCDF f2 = random_cdf(rng);
    const double alpha = sampling::random_dyadic_weight(rng);
    const StepCDF m = mixture(f1, f2, alpha);
    const ExtendedReal v1 = t(f1);
    const ExtendedReal v2 = t(f2);
    const ExtendedReal vm = t(m);
    const bool bad = concave ? vm < min(v1, v2) : vm > max(v1, v2);
    if (bad) {
      Witness w = make_witness({f1, f2, m}, {v1, v2, vm},
                               concave ? "T(mixture) < min(T(F1), T(F2))" : "T(mixture) > max(T(F1), T(F2))");
      w.params = {{"alpha", alpha}};
      return failed(std::move(w));
    }
    return {};
  });
  return merge(to_string(mode), seed, std::move(outcomes));
}

CheckReport check_ordinal_covariance(const FunctionalHandle& t, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("check_ordinal_covariance: trials must be positive");
  auto outcomes = detail::parallel_map<TrialOutcome>(trials, [&](std::size_t i) -> TrialOutcome {
    Rng rng = sampling::trial_rng(seed, kOrdinal, i);
    const StepCDF f = i % 2 == 0 ? scaled_cdf(rng) : wide_dyadic(rng);
    const MonotoneTransform phi = random_transform(rng);
    const ExtendedReal v = t(f);
    if (!v.is_finite()) return skipped();
    const StepCDF g = apply_transform(f, phi);
    const ExtendedReal vg = t(g);
    const ExtendedReal expected = ExtendedReal::finite(phi(v.value()));
    if (vg != expected) {
      Witness w = make_witness({f, g}, {v, vg}, "T(F o phi^-1) != phi(T(F))");
      w.transform = phi;
      w.params = {{"phi_of_value", expected.value()}};
      return failed(std::move(w));
    }
    return {};
  });
  return merge("ordinal_covariance", seed, std::move(outcomes));
}

bool witness_reproduces(const FunctionalHandle& t, const CheckReport& report) {
  if (report.passed() || !report.witness) return false;
  const Witness& w = *report.witness;
  const auto& d = w.distributions;
  const std::string& ax = report.axiom;
  if (ax == "normalization") {
    const double x = w.param("x");
    return d.size() == 1 && d[0] == point_mass(x) && t(d[0]) != ExtendedReal::finite(x);
  }
  if (ax == "monotonicity") {
    const StochOrder o = stoch_order(d[0], d[1]);
    return (o == StochOrder::dominates || o == StochOrder::equal) && t(d[0]) < t(d[1]);
  }
  if (ax == "locality") {
    const double a = w.param("a");
    const double b = w.param("b");
    const ExtendedReal v = t(d[0]);
    return v.is_finite() && a < v.value() && v.value() < b && agree_on(d[0], d[1], a, b) && t(d[1]) != v;
  }
  if (ax == "semicontinuity_lower") return sequence_violation(t, w, true);
  if (ax == "semicontinuity_upper") return sequence_violation(t, w, false);
  if (ax == "cxls") {
    const ExtendedReal v1 = t(d[0]);
    return v1.is_finite() && t(d[1]) == v1 && mixture(d[0], d[1], w.param("alpha")) == d[2] && t(d[2]) != v1;
  }
  if (ax == "quasiconcave" || ax == "quasiconvex") {
    if (mixture(d[0], d[1], w.param("alpha")) != d[2]) return false;
    const ExtendedReal v1 = t(d[0]);
    const ExtendedReal v2 = t(d[1]);
    const ExtendedReal vm = t(d[2]);
    return ax == "quasiconcave" ? vm < min(v1, v2) : vm > max(v1, v2);
  }
  if (ax == "ordinal_covariance") {
    if (!w.transform || apply_transform(d[0], *w.transform) != d[1]) return false;
    const ExtendedReal v = t(d[0]);
    return v.is_finite() && t(d[1]) != ExtendedReal::finite((*w.transform)(v.value()));
  }
  return false;
}

const char* to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

const char* to_string(SemicontinuityDirection d) {
  return d == SemicontinuityDirection::lower ? "lower" : "upper";
}

const char* to_string(QuasiMode m) { return m == QuasiMode::quasiconcave ? "quasiconcave" : "quasiconvex"; }

}  // namespace lambdaq
