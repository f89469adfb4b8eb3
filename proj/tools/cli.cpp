#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lambdaq/distributions.hpp"
#include "lambdaq/errors.hpp"
#include "lambdaq/json_io.hpp"
#include "lambdaq/reconstruction.hpp"

namespace lambdaq::cli {

namespace {

using json_io::json;

const std::vector<std::string> kSuites = {"normalization", "monotonicity", "locality",
                                          "semicontinuity_lower", "semicontinuity_upper", "cxls",
                                          "quasiconcave", "quasiconvex", "ordinal_covariance"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double number_or_throw(const std::string& s, const std::string& what) {
  const auto v = to_number(s);
  if (!v) throw InvalidArgument(what + ": '" + s + "' is not a number");
  return *v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QuantileKind parse_kind(const std::string& s) {
  if (s == "minus") return QuantileKind::q_minus;
  if (s == "plus") return QuantileKind::q_plus;
  if (s == "tilde-minus") return QuantileKind::q_tilde_minus;
  if (s == "tilde-plus") return QuantileKind::q_tilde_plus;
  throw InvalidArgument("unknown kind '" + s + "'");
}

QuantileSide parse_side(const std::string& s) {
  if (s == "minus") return QuantileSide::minus;
  if (s == "plus") return QuantileSide::plus;
  throw InvalidArgument("unknown side '" + s + "'");
}

LambdaSpec parse_lambda_selector(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("Lambda selector needs a form, e.g. constant:0.5");
  const std::string form = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (form == "constant") return LambdaSpec::constant(number_or_throw(arg, "constant"));
  if (form == "two_level") {
    const auto parts = split(arg, ',');
    if (parts.size() != 3) throw InvalidArgument("two_level expects alpha,beta,xbar");
    return LambdaSpec::two_level(number_or_throw(parts[0], "alpha"), number_or_throw(parts[1], "beta"),
                                 number_or_throw(parts[2], "xbar"));
  }
  if (form == "json") return json_io::parse_lambda(read_file(arg));
  if (form == "grid") {
    const LambdaSpec s = read_lambda_file(arg);
    if (!s.is_grid()) throw InvalidArgument("grid selector: '" + arg + "' does not hold a grid Lambda");
    return s;
  }
  throw InvalidArgument("unknown Lambda form '" + form + "'");
}

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("LQ_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("LQ_SEED is not an unsigned integer: '") + env + "'");
  }
  return seed;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << content;
}

// Lambda used for exact step computations.
LambdaSpec computable(const LambdaSpec& s) { return s.is_grid() ? to_piecewise_linear(s) : s; }

struct Options {
  std::string losses;
  std::string lambda_path;
  std::string lambda_json;
  std::string kind = "minus";
  std::string side = "minus";
  std::string functional;
  std::string suite = "all";
  std::size_t trials = 500;
  std::optional<std::size_t> trials_given;
  std::uint64_t seed = 42;
  std::size_t grid = 512;
  std::string out;
  bool json = false;
};

LambdaSpec lambda_from_options(const Options& o) {
  if (!o.lambda_json.empty()) return json_io::parse_lambda(o.lambda_json);
  if (!o.lambda_path.empty()) return read_lambda_file(o.lambda_path);
  throw InvalidArgument("a Lambda is required (--lambda PATH or --lambda-json STR)");
}

StepCDF losses_cdf(const Options& o, std::size_t* n) {
  if (o.losses.empty()) throw InvalidArgument("--losses is required");
  const std::vector<double> xs = read_losses(o.losses);
  *n = xs.size();
  return StepCDF::empirical(xs);
}

int cmd_quantile(const Options& o, std::ostream& out) {
  std::size_t n = 0;
  const StepCDF f = losses_cdf(o, &n);
  const LambdaSpec spec = lambda_from_options(o);
  const QuantileKind kind = parse_kind(o.kind);
  const ExtendedReal v = lambda_quantile(f, computable(spec), kind);
  if (o.json) {
    json j{{"kind", to_string(kind)}, {"value", json_io::to_json(v)}, {"lambda", json_io::to_json(spec)},
           {"n_observations", n}};
    write_output(o.out, j.dump(2) + "\n", out);
  } else {
    write_output(o.out, to_string(v) + "\n", out);
  }
  return kOk;
}

int cmd_lvar(const Options& o, std::ostream& out) {
  std::size_t n = 0;
  const StepCDF f = losses_cdf(o, &n);
  const LambdaSpec spec = lambda_from_options(o);
  const double v = lambda_var(f, spec);
  if (o.json) {
    json j{{"lvar", v}, {"lambda", json_io::to_json(spec)}, {"n_observations", n}};
    write_output(o.out, j.dump(2) + "\n", out);
  } else {
    write_output(o.out, format_double(v) + "\n", out);
  }
  return kOk;
}

std::vector<double> lambda_points(const LambdaSpec& spec) {
  namespace lv = lambda_variant;
  return std::visit(
      [](const auto& v) -> std::vector<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, lv::StepFn>) {
          return v.breakpoints;
        } else if constexpr (std::is_same_v<T, lv::TwoLevel>) {
          return {v.xbar};
        } else if constexpr (std::is_same_v<T, lv::PiecewiseLinear>) {
          std::vector<double> xs;
          for (const auto& k : v.knots) xs.push_back(k.first);
          return xs;
        } else if constexpr (std::is_same_v<T, lv::GridSampled>) {
          return v.xs;
        } else {
          return {};
        }
      },
      spec.variant());
}

int cmd_plotdata(const Options& o, std::ostream& out) {
  std::size_t n = 0;
  const StepCDF f = losses_cdf(o, &n);
  const LambdaSpec spec = lambda_from_options(o);
  const QuantileKind kind = parse_kind(o.kind);
  const ExtendedReal q = lambda_quantile(f, computable(spec), kind);
  std::set<double> xs(f.breakpoints().begin(), f.breakpoints().end());
  for (double x : lambda_points(spec)) xs.insert(x);
  if (q.is_finite()) xs.insert(q.value());
  const double lo = *xs.begin() - 1.0;
  const double hi = *xs.rbegin() + 1.0;
  xs.insert(lo);
  xs.insert(hi);
  std::ostringstream csv;
  csv << "x,F,Lambda,marker\n";
  for (double x : xs) {
    const bool mark = q.is_finite() && q.value() == x;
    csv << format_double(x) << ',' << format_double(f(x)) << ',' << format_double(eval_lambda(spec, x)) << ','
        << (mark ? 1 : 0) << '\n';
  }
  write_output(o.out, csv.str(), out);
  return kOk;
}

std::vector<std::string> selected_suites(const std::string& list) {
  if (list == "all") return kSuites;
  std::vector<std::string> out;
  for (const auto& s : split(list, ',')) {
    if (s == "semicontinuity") {
      out.push_back("semicontinuity_lower");
      out.push_back("semicontinuity_upper");
    } else if (std::find(kSuites.begin(), kSuites.end(), s) != kSuites.end()) {
      out.push_back(s);
    } else {
      throw InvalidArgument("unknown suite '" + s + "'");
    }
  }
  return out;
}

double semicontinuity_tolerance(const Selector& sel) {
  if (!sel.spec) return 0.0;
  const bool linear = sel.spec->is_grid() ||
                      std::holds_alternative<lambda_variant::PiecewiseLinear>(sel.spec->variant());
  return linear ? 1e-6 : 0.0;
}

CheckReport run_suite(const Selector& sel, const std::string& suite, std::size_t trials, std::uint64_t seed) {
  const FunctionalHandle& t = sel.handle;
  if (suite == "normalization") return check_normalization(t, default_normalization_points());
  if (suite == "monotonicity") return check_monotonicity(t, trials, seed);
  if (suite == "locality") return check_locality(t, trials, seed);
  if (suite == "semicontinuity_lower") {
    return check_semicontinuity(t, SemicontinuityDirection::lower, trials, seed, semicontinuity_tolerance(sel));
  }
  if (suite == "semicontinuity_upper") {
    return check_semicontinuity(t, SemicontinuityDirection::upper, trials, seed, semicontinuity_tolerance(sel));
  }
  if (suite == "cxls") return check_cxls(t, trials, seed);
  if (suite == "quasiconcave") return check_quasi(t, QuasiMode::quasiconcave, trials, seed);
  if (suite == "quasiconvex") return check_quasi(t, QuasiMode::quasiconvex, trials, seed);
  return check_ordinal_covariance(t, trials, seed);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Selector sel = parse_selector(o.functional);
  const std::uint64_t seed = effective_seed(o.seed);
  const std::size_t trials = o.trials_given.value_or(o.trials);
  if (trials == 0) throw InvalidArgument("--trials must be positive");
  json reports = json::array();
  std::ostringstream text;
  bool unexpected = false;
  for (const auto& suite : selected_suites(o.suite)) {
    const std::string expected = expected_verdict(sel, suite);
    json entry;
    std::string verdict;
    try {
      const CheckReport r = run_suite(sel, suite, trials, seed);
      verdict = to_string(r.verdict);
      entry = json_io::to_json(r);
      text << suite << ": " << verdict << " (trials " << r.trials << ", skipped " << r.skipped << ")";
    } catch (const CheckError& e) {
      verdict = "error";
      entry = {{"axiom", suite}, {"verdict", "error"}, {"note", e.what()}};
      text << suite << ": error (" << e.what() << ")";
    } catch (const HypothesisViolation& e) {
      verdict = "error";
      entry = {{"axiom", suite}, {"verdict", "error"}, {"note", e.what()}};
      text << suite << ": error (" << e.what() << ")";
    }
    entry["expected"] = expected;
    const bool bad = expected == "pass" && verdict != "pass";
    if (bad) unexpected = true;
    text << " expected " << expected << (bad ? " UNEXPECTED" : "") << '\n';
    reports.push_back(std::move(entry));
  }
  const json doc{{"functional", sel.text}, {"seed", seed}, {"reports", reports}, {"ok", !unexpected}};
  if (o.json) {
    write_output(o.out, doc.dump(2) + "\n", out);
  } else {
    out << text.str();
    if (!o.out.empty()) write_output(o.out, doc.dump(2) + "\n", out);
  }
  return unexpected ? kCheckFailed : kOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
  const Selector sel = parse_selector(o.functional);
  ReconstructOptions ro;
  ro.side = parse_side(o.side);
  ro.grid_n = o.grid;
  ro.seed = effective_seed(o.seed);
  if (o.trials_given) ro.verify_trials = *o.trials_given;
  if (ro.verify_trials == 0) throw InvalidArgument("--trials must be positive");
  const ReconstructionResult r = reconstruct(sel.handle, ro);
  write_output(o.out, json_io::to_json(r).dump(2) + "\n", out);
  if (!r.prechecks_passed()) return kHypothesisError;
  return r.verification.passed() ? kOk : kCheckFailed;
}

}  // namespace

Selector parse_selector(const std::string& text) {
  if (text.empty()) throw InvalidArgument("--functional is required");
  if (text == "mean") return {text, mean_functional(), std::nullopt, std::nullopt};
  if (text == "esssup") return {text, esssup_functional(), std::nullopt, std::nullopt};
  if (text == "essinf") return {text, essinf_functional(), std::nullopt, std::nullopt};
  if (text == "zero") return {text, constant_functional(0.0), std::nullopt, std::nullopt};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("unknown functional '" + text + "'");
  const std::string head = text.substr(0, colon);
  if (head.size() < 2 || head[0] != 'q') throw InvalidArgument("unknown functional '" + head + "'");
  const QuantileKind kind = parse_kind(head.substr(1));
  LambdaSpec spec = parse_lambda_selector(text.substr(colon + 1));
  return {text, quantile_functional(spec, kind), std::move(spec), kind};
}

std::vector<double> read_losses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read losses file '" + path + "'");
  std::vector<double> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    const auto v = to_number(s);
    if (!v) {
      if (lineno == 1) continue;
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": '" + s + "' is not a number");
    }
    xs.push_back(*v);
  }
  if (xs.empty()) throw InvalidArgument("losses file '" + path + "' holds no observations");
  return xs;
}

LambdaSpec read_lambda_file(const std::string& path) {
  const std::string content = read_file(path);
  const std::string t = trim(content);
  if (!t.empty() && t.front() == '{') return json_io::parse_lambda(t);
  std::vector<double> xs;
  std::vector<double> vs;
  std::size_t lineno = 0;
  std::stringstream ss(content);
  std::string line;
  while (std::getline(ss, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cols = split(line, ',');
    const auto x = cols.size() == 2 ? to_number(cols[0]) : std::nullopt;
    const auto v = cols.size() == 2 ? to_number(cols[1]) : std::nullopt;
    if (!x || !v) {
      if (lineno == 1) continue;
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'x,value'");
    }
    xs.push_back(*x);
    vs.push_back(*v);
  }
  if (xs.size() < 2) throw InvalidArgument("grid Lambda '" + path + "' needs at least two rows");
  return LambdaSpec::grid(std::move(xs), std::move(vs));
}

std::string expected_verdict(const Selector& sel, const std::string& axiom) {
  if (!sel.spec) {
    static const std::map<std::string, std::set<std::string>> plain = {
        {"mean", {"normalization", "monotonicity", "cxls", "quasiconcave", "quasiconvex"}},
        {"esssup", {"normalization", "monotonicity", "locality", "ordinal_covariance"}},
        {"essinf", {"normalization", "monotonicity", "locality", "ordinal_covariance"}},
        {"zero", {"monotonicity", "locality", "cxls", "quasiconcave", "quasiconvex"}},
    };
    const auto it = plain.find(sel.text);
    return it != plain.end() && it->second.count(axiom) ? "pass" : "unknown";
  }
  const LambdaSpec spec = computable(*sel.spec);
  const QuantileKind k = *sel.kind;
  const bool nonincreasing = validate_monotone(spec) == Monotonicity::nonincreasing;
  const bool left = k == QuantileKind::q_minus || k == QuantileKind::q_tilde_minus;
  const bool tilde = k == QuantileKind::q_tilde_minus || k == QuantileKind::q_tilde_plus;
  const bool above_zero = spec.min_value() > 0.0;
  const bool below_one = spec.max_value() < 1.0;

  if (axiom == "monotonicity") return "pass";
  if (axiom == "normalization") {
    if (above_zero && below_one) return "pass";
    if (nonincreasing && !spec.is_constant()) {
      if (left) return above_zero ? "pass" : "fail";
      return below_one ? "pass" : "fail";
    }
    return "unknown";
  }
  if (axiom == "quasiconcave") return !tilde || nonincreasing ? "pass" : "unknown";
  if (axiom == "quasiconvex") return tilde || nonincreasing ? "pass" : "unknown";
  if (axiom == "locality" || axiom == "cxls") return nonincreasing ? "pass" : "unknown";
  if (axiom == "semicontinuity_lower") return nonincreasing && left ? "pass" : "unknown";
  if (axiom == "semicontinuity_upper") return nonincreasing && !left ? "pass" : "unknown";
  if (axiom == "ordinal_covariance") {
    if (spec.is_constant()) return "pass";
    return nonincreasing ? "fail" : "unknown";
  }
  return "unknown";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambda-quantiles: computation, axiom checks and reconstruction", "lambdaq"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write output to PATH"); };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--losses", o.losses, "CSV file with one loss per line")->required();
    sub->add_option("--lambda", o.lambda_path, "Lambda spec file (JSON, or CSV x,value grid)");
    sub->add_option("--lambda-json", o.lambda_json, "Inline JSON Lambda spec");
    sub->add_option("--kind", o.kind, "minus, plus, tilde-minus or tilde-plus");
    sub->add_flag("--json", o.json, "JSON output");
    add_common(sub);
  };
  auto add_functional = [&](CLI::App* sub) {
    sub->add_option("--functional", o.functional, "Functional selector, e.g. qminus:constant:0.5")->required();
    sub->add_option("--trials", o.trials_given, "Random trials per suite");
    sub->add_option("--seed", o.seed, "Random seed (LQ_SEED overrides)");
    add_common(sub);
  };

  CLI::App* quantile = app.add_subcommand("quantile", "Lambda-quantile of an empirical loss distribution");
  add_input(quantile);
  CLI::App* lvar = app.add_subcommand("lvar", "Lambda value at risk, -q_plus");
  add_input(lvar);
  CLI::App* plot = app.add_subcommand("plotdata", "CSV of F and Lambda on the merged breakpoint grid");
  add_input(plot);
  CLI::App* verify = app.add_subcommand("verify", "Run axiom suites on a built-in functional");
  add_functional(verify);
  verify->add_option("--suite", o.suite, "Comma-separated suites or 'all'");
  verify->add_flag("--json", o.json, "Print the JSON report instead of text");
  CLI::App* recon = app.add_subcommand("reconstruct", "Recover Lambda from a functional by dyadic probing");
  add_functional(recon);
  recon->add_option("--side", o.side, "minus or plus");
  recon->add_option("--grid", o.grid, "Number of lambda grid levels");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*quantile) return cmd_quantile(o, out);
    if (*lvar) return cmd_lvar(o, out);
    if (*plot) return cmd_plotdata(o, out);
    if (*verify) return cmd_verify(o, out);
    return cmd_reconstruct(o, out);
  } catch (const SpecViolation& e) {
    err << "spec violation: " << e.what() << '\n';
    return kSpecError;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return kHypothesisError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lambdaq::cli
