#include "lambdaq/quantile_engine.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <optional>

#include "lambdaq/errors.hpp"

namespace lambdaq {

namespace lv = lambda_variant;

namespace {

// Lambda restricted to an open interval between consecutive knots: either
// constant or the linear segment between two knots of a piecewise-linear
// spec. Linear segments keep the knot endpoints so that the crossing
// abscissa for a level depends only on the segment, never on how F's
// breakpoints subdivide it.
struct Piece {
  bool linear = false;
  double value = 0.0;
  double x0 = 0.0, v0 = 0.0, x1 = 0.0, v1 = 0.0;
};

// knots k_0 < ... < k_{n-1}; point_values[i] = Lambda(k_i); pieces[i] covers
// (k_{i-1}, k_i) with k_{-1} = -inf and k_n = +inf.
struct Profile {
  std::vector<double> knots;
  std::vector<double> point_values;
  std::vector<Piece> pieces;
};

Piece constant_piece(double v) {
  Piece p;
  p.value = v;
  return p;
}

Profile make_profile(const LambdaSpec& spec) {
  Profile prof;
  if (const auto* c = std::get_if<lv::Constant>(&spec.variant())) {
    prof.pieces.push_back(constant_piece(c->level));
  } else if (const auto* s = std::get_if<lv::StepFn>(&spec.variant())) {
    prof.knots = s->breakpoints;
    for (std::size_t i = 0; i < s->breakpoints.size(); ++i) {
      prof.point_values.push_back(s->continuity == Continuity::right ? s->values[i + 1] : s->values[i]);
    }
    for (double v : s->values) prof.pieces.push_back(constant_piece(v));
  } else if (const auto* t = std::get_if<lv::TwoLevel>(&spec.variant())) {
    prof.knots = {t->xbar};
    prof.point_values = {t->beta};
    prof.pieces = {constant_piece(t->beta), constant_piece(t->alpha)};
  } else if (const auto* p = std::get_if<lv::PiecewiseLinear>(&spec.variant())) {
    const auto& k = p->knots;
    prof.pieces.push_back(constant_piece(k.front().second));
    for (std::size_t i = 0; i < k.size(); ++i) {
      prof.knots.push_back(k[i].first);
      prof.point_values.push_back(k[i].second);
      if (i + 1 < k.size()) {
        Piece seg;
        if (k[i].second == k[i + 1].second) {
          seg.value = k[i].second;
        } else {
          seg.linear = true;
          seg.x0 = k[i].first;
          seg.v0 = k[i].second;
          seg.x1 = k[i + 1].first;
          seg.v1 = k[i + 1].second;
        }
        prof.pieces.push_back(seg);
      }
    }
    prof.pieces.push_back(constant_piece(k.back().second));
  } else {
    throw InvalidArgument("lambda_quantile: grid-sampled Lambda requires continuous_quantile or to_piecewise_linear");
  }
  return prof;
}

enum class Relation { ge, gt, lt, le };  // F(x) REL Lambda(x)

bool compare(double f, Relation rel, double lambda) {
  switch (rel) {
    case Relation::ge:
      return f >= lambda;
    case Relation::gt:
      return f > lambda;
    case Relation::lt:
      return f < lambda;
    case Relation::le:
      return f <= lambda;
  }
  return false;
}

// Abscissa where the segment reaches level c, clamped to the segment. It is
// monotone in c, so membership tests built on it stay consistent when F
// changes.
double crossing(const Piece& p, double c) {
  const double t = (c - p.v0) / (p.v1 - p.v0);
  if (t <= 0.0) return p.x0;
  if (t >= 1.0) return p.x1;
  return std::min(p.x1, p.x0 + t * (p.x1 - p.x0));
}

// On a linear segment with F constant at c, the relation holds exactly on
// {x >= x*}, {x > x*}, {x <= x*} or {x < x*}.
struct HalfLine {
  bool upward;  // set is {x >(=) x*} when true, {x <(=) x*} otherwise
  bool closed;  // includes x* itself
  double at;
};

HalfLine half_line(const Piece& p, double c, Relation rel) {
  const bool decreasing = p.v1 < p.v0;
  const double xs = crossing(p, c);
  // For a decreasing segment Lambda(x) <= c iff x >= x*.
  switch (rel) {
    case Relation::ge:
      return {decreasing, true, xs};
    case Relation::gt:
      return {decreasing, false, xs};
    case Relation::lt:
      return {!decreasing, false, xs};
    case Relation::le:
      return {!decreasing, true, xs};
  }
  return {};
}

bool point_member(const Piece& p, double c, Relation rel, double x) {
  if (!p.linear) return compare(c, rel, p.value);
  const HalfLine h = half_line(p, c, rel);
  if (h.upward) return h.closed ? x >= h.at : x > h.at;
  return h.closed ? x <= h.at : x < h.at;
}

// Intersection of the relation's set with the open interval (a, b), as
// (inf, sup), or nothing.
struct Span {
  double lo;
  double hi;
};

std::optional<Span> interval_member(const Piece& p, double c, Relation rel, double a, double b) {
  if (!p.linear) {
    if (compare(c, rel, p.value)) return Span{a, b};
    return std::nullopt;
  }
  const HalfLine h = half_line(p, c, rel);
  if (h.upward) {
    if (h.at < b) return Span{std::max(a, h.at), b};
    return std::nullopt;
  }
  if (h.at > a) return Span{a, std::min(b, h.at)};
  return std::nullopt;
}

// Regions in increasing order: (-inf, p_0), {p_0}, (p_0, p_1), ..., {p_m}, (p_m, +inf),
// with F and Lambda described on each one.
struct Region {
  bool is_point;
  double lo;  // the point itself when is_point
  double hi;
  double f;
  const Piece* piece = nullptr;  // open regions and non-knot points
  std::optional<double> knot_value;
};

std::vector<Region> build_regions(const StepCDF& f, const Profile& prof) {
  std::vector<double> grid;
  grid.reserve(f.size() + prof.knots.size());
  std::set_union(f.breakpoints().begin(), f.breakpoints().end(), prof.knots.begin(), prof.knots.end(),
                 std::back_inserter(grid));
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<Region> regions;
  regions.reserve(2 * grid.size() + 1);
  std::size_t fi = 0;  // breakpoints of F that are <= current point
  std::size_t ki = 0;  // knots that are < current position
  double f_val = 0.0;
  double prev = -inf;
  for (double p : grid) {
    // Open interval (prev, p): F keeps its value, Lambda is on piece ki.
    regions.push_back(Region{false, prev, p, f_val, &prof.pieces[ki], std::nullopt});
    while (fi < f.size() && f.breakpoints()[fi] <= p) f_val = f.cum_probs()[fi++];
    Region pt{true, p, p, f_val, nullptr, std::nullopt};
    if (ki < prof.knots.size() && prof.knots[ki] == p) {
      pt.knot_value = prof.point_values[ki];
      ++ki;
    } else {
      pt.piece = &prof.pieces[ki];
    }
    regions.push_back(pt);
    prev = p;
  }
  regions.push_back(Region{false, prev, inf, f_val, &prof.pieces[ki], std::nullopt});
  return regions;
}

bool region_point_member(const Region& r, Relation rel) {
  if (r.knot_value) return compare(r.f, rel, *r.knot_value);
  return point_member(*r.piece, r.f, rel, r.lo);
}

ExtendedReal scan_inf(const std::vector<Region>& regions, Relation rel) {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    if (r.is_point) {
      if (region_point_member(r, rel)) return ExtendedReal::finite(r.lo);
      continue;
    }
    if (auto s = interval_member(*r.piece, r.f, rel, r.lo, r.hi)) {
      if (i == 0) return ExtendedReal::neg_inf();
      return ExtendedReal::finite(s->lo);
    }
  }
  return ExtendedReal::pos_inf();
}

ExtendedReal scan_sup(const std::vector<Region>& regions, Relation rel) {
  for (std::size_t j = regions.size(); j-- > 0;) {
    const Region& r = regions[j];
    if (r.is_point) {
      if (region_point_member(r, rel)) return ExtendedReal::finite(r.lo);
      continue;
    }
    if (auto s = interval_member(*r.piece, r.f, rel, r.lo, r.hi)) {
      if (j + 1 == regions.size()) return ExtendedReal::pos_inf();
      return ExtendedReal::finite(s->hi);
    }
  }
  return ExtendedReal::neg_inf();
}

}  // namespace

ExtendedReal classic_quantile(const StepCDF& f, double level, QuantileSide side) {
  if (!(level >= 0.0 && level <= 1.0)) throw InvalidArgument("classic_quantile: level outside [0, 1]");
  const auto& cum = f.cum_probs();
  if (side == QuantileSide::minus) {
    if (level == 0.0) return ExtendedReal::neg_inf();
    const auto it = std::lower_bound(cum.begin(), cum.end(), level);
    return ExtendedReal::finite(f.breakpoints()[static_cast<std::size_t>(it - cum.begin())]);
  }
  if (level == 1.0) return ExtendedReal::pos_inf();
  const auto it = std::upper_bound(cum.begin(), cum.end(), level);
  return ExtendedReal::finite(f.breakpoints()[static_cast<std::size_t>(it - cum.begin())]);
}

ExtendedReal lambda_quantile(const StepCDF& f, const LambdaSpec& spec, QuantileKind kind) {
  const Profile prof = make_profile(spec);
  const std::vector<Region> regions = build_regions(f, prof);
  switch (kind) {
    case QuantileKind::q_minus:
      return scan_inf(regions, Relation::ge);
    case QuantileKind::q_plus:
      return scan_inf(regions, Relation::gt);
    case QuantileKind::q_tilde_minus:
      return scan_sup(regions, Relation::lt);
    case QuantileKind::q_tilde_plus:
      return scan_sup(regions, Relation::le);
  }
  throw InvalidArgument("lambda_quantile: unknown kind");
}

ExtendedReal two_level_quantile(const StepCDF& f, double alpha, double beta, double xbar) {
  if (!(alpha > 0.0 && alpha < beta && beta < 1.0)) {
    throw InvalidArgument("two_level_quantile: requires 0 < alpha < beta < 1");
  }
  const ExtendedReal xb = ExtendedReal::finite(xbar);
  const ExtendedReal q_beta = classic_quantile(f, beta, QuantileSide::minus);
  if (q_beta <= xb) return q_beta;
  const ExtendedReal q_alpha = classic_quantile(f, alpha, QuantileSide::minus);
  if (q_alpha >= xb) return q_alpha;
  return xb;
}

GridCDF::GridCDF(std::vector<double> xs, std::vector<double> values) : xs_(std::move(xs)), values_(std::move(values)) {
  if (xs_.size() < 2 || xs_.size() != values_.size()) {
    throw InvalidArgument("GridCDF: needs at least two samples and equal lengths");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i])) throw InvalidArgument("GridCDF: non-finite abscissa");
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) throw InvalidArgument("GridCDF: value outside [0, 1]");
    if (i > 0 && !(xs_[i - 1] < xs_[i])) throw InvalidArgument("GridCDF: abscissae must be strictly increasing");
    if (i > 0 && values_[i] < values_[i - 1]) throw InvalidArgument("GridCDF: values must be nondecreasing");
  }
}

double GridCDF::operator()(double x) const {
  if (x <= xs_.front()) return values_.front();
  if (x >= xs_.back()) return values_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto j = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (x == xs_[j]) return values_[j];
  const double t = (x - xs_[j]) / (xs_[j + 1] - xs_[j]);
  return values_[j] + t * (values_[j + 1] - values_[j]);
}

double continuous_quantile(const GridCDF& f, const LambdaSpec& spec, QuantileKind kind, double xtol) {
  if (!(xtol > 0.0)) throw InvalidArgument("continuous_quantile: xtol must be positive");
  Relation rel = Relation::ge;
  switch (kind) {
    case QuantileKind::q_minus:
      rel = Relation::ge;
      break;
    case QuantileKind::q_plus:
      rel = Relation::gt;
      break;
    case QuantileKind::q_tilde_minus:
      rel = Relation::lt;
      break;
    case QuantileKind::q_tilde_plus:
      rel = Relation::le;
      break;
  }
  auto holds = [&](double x) { return compare(f(x), rel, spec(x)); };
  const auto& xs = f.xs();
  const bool inf_kind = kind == QuantileKind::q_minus || kind == QuantileKind::q_plus;

  double lo = 0.0;
  double hi = 0.0;
  if (inf_kind) {
    std::size_t i = 0;
    while (i < xs.size() && !holds(xs[i])) ++i;
    if (i == 0) throw HypothesisViolation("continuous_quantile: inequality already holds at the left end of the grid");
    if (i == xs.size()) throw HypothesisViolation("continuous_quantile: inequality never holds on the grid (upper tail)");
    lo = xs[i - 1];  // fails
    hi = xs[i];      // holds
    while (hi - lo > xtol) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      (holds(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  std::size_t i = xs.size();
  while (i > 0 && !holds(xs[i - 1])) --i;
  if (i == xs.size()) throw HypothesisViolation("continuous_quantile: inequality still holds at the right end of the grid");
  if (i == 0) throw HypothesisViolation("continuous_quantile: inequality never holds on the grid (lower tail)");
  lo = xs[i - 1];  // holds
  hi = xs[i];      // fails
  while (hi - lo > xtol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (holds(mid) ? lo : hi) = mid;
  }
  return lo;
}

double lambda_var(const StepCDF& f, const LambdaSpec& spec) {
  if (validate_monotone(spec) != Monotonicity::nonincreasing) {
    throw SpecViolation("Lambda V@R requires a nonincreasing Lambda");
  }
  if (!(spec.min_value() > 0.0 && spec.max_value() < 1.0)) {
    throw SpecViolation("Lambda V@R requires 0 < Lambda < 1; finiteness of q_plus is not guaranteed otherwise");
  }
  const LambdaSpec usable = to_piecewise_linear(spec);
  const ExtendedReal q = lambda_quantile(f, usable, QuantileKind::q_plus);
  if (!q.is_finite()) throw SpecViolation("Lambda V@R: q_plus is infinite");
  const double v = -q.value();
  return v == 0.0 ? 0.0 : v;
}

const char* to_string(QuantileKind kind) {
  switch (kind) {
    case QuantileKind::q_minus:
      return "minus";
    case QuantileKind::q_plus:
      return "plus";
    case QuantileKind::q_tilde_minus:
      return "tilde-minus";
    case QuantileKind::q_tilde_plus:
      return "tilde-plus";
  }
  return "?";
}

const char* to_string(QuantileSide side) { return side == QuantileSide::minus ? "minus" : "plus"; }

}  // namespace lambdaq
