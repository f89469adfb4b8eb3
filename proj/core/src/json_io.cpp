#include "lambdaq/json_io.hpp"

#include "lambdaq/errors.hpp"

namespace lambdaq::json_io {

namespace lv = lambda_variant;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw InvalidArgument(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw InvalidArgument(std::string("field '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Monotonicity monotonicity_from_string(const std::string& s) {
  if (s == "nonincreasing") return Monotonicity::nonincreasing;
  if (s == "nondecreasing") return Monotonicity::nondecreasing;
  if (s == "general") return Monotonicity::general;
  throw InvalidArgument("unknown monotonicity '" + s + "'");
}

json witness_json(const Witness& w) {
  json j;
  j["distributions"] = json::array();
  for (const auto& d : w.distributions) j["distributions"].push_back(to_json(d));
  j["values"] = json::array();
  for (const auto& v : w.values) j["values"].push_back(to_json(v));
  j["params"] = json::object();
  for (const auto& [k, v] : w.params) j["params"][k] = v;
  if (w.transform) {
    j["transform"] = json::array();
    for (const auto& [t, y] : w.transform->knots()) j["transform"].push_back({t, y});
  }
  j["note"] = w.note;
  return j;
}

}  // namespace

json to_json(const ExtendedReal& x) {
  if (x.is_finite()) return x.value();
  return x.is_pos_inf() ? "+inf" : "-inf";
}

ExtendedReal extended_from_json(const json& j) {
  if (j.is_number()) return ExtendedReal::finite(j.get<double>());
  if (j.is_string()) return parse_extended(j.get<std::string>());
  throw InvalidArgument("extended real must be a number or \"+inf\"/\"-inf\"");
}

json to_json(const StepCDF& f) { return {{"breakpoints", f.breakpoints()}, {"cum_probs", f.cum_probs()}}; }

StepCDF step_cdf_from_json(const json& j) { return StepCDF(numbers(j, "breakpoints"), numbers(j, "cum_probs")); }

json to_json(const LambdaSpec& spec) {
  json j = std::visit(overloaded{
                          [](const lv::Constant& c) -> json { return {{"type", "constant"}, {"level", c.level}}; },
                          [](const lv::StepFn& s) -> json {
                            return {{"type", "step"},
                                    {"breakpoints", s.breakpoints},
                                    {"values", s.values},
                                    {"continuity", to_string(s.continuity)}};
                          },
                          [](const lv::TwoLevel& t) -> json {
                            return {{"type", "two_level"}, {"alpha", t.alpha}, {"beta", t.beta}, {"xbar", t.xbar}};
                          },
                          [](const lv::PiecewiseLinear& p) -> json {
                            json knots = json::array();
                            for (const auto& [x, v] : p.knots) knots.push_back({x, v});
                            return {{"type", "piecewise_linear"}, {"knots", knots}};
                          },
                          [](const lv::GridSampled& g) -> json {
                            return {{"type", "grid"}, {"xs", g.xs}, {"values", g.values}};
                          },
                      },
                      spec.variant());
  j["monotonicity"] = to_string(spec.monotonicity());
  return j;
}

LambdaSpec lambda_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) throw InvalidArgument("field 'type' must be a string");
  const std::string t = type.get<std::string>();
  std::optional<Monotonicity> declared;
  if (j.contains("monotonicity")) {
    if (!j["monotonicity"].is_string()) throw InvalidArgument("field 'monotonicity' must be a string");
    declared = monotonicity_from_string(j["monotonicity"].get<std::string>());
  }
  if (t == "constant") return LambdaSpec(lv::Constant{number(j, "level")}, declared);
  if (t == "two_level") {
    return LambdaSpec(lv::TwoLevel{number(j, "alpha"), number(j, "beta"), number(j, "xbar")}, declared);
  }
  if (t == "step") {
    Continuity c = Continuity::right;
    if (j.contains("continuity")) {
      const json& cj = j["continuity"];
      if (!cj.is_string()) throw InvalidArgument("field 'continuity' must be a string");
      const std::string s = cj.get<std::string>();
      if (s == "left") c = Continuity::left;
      else if (s != "right") throw InvalidArgument("continuity must be \"left\" or \"right\"");
    }
    return LambdaSpec(lv::StepFn{numbers(j, "breakpoints"), numbers(j, "values"), c}, declared);
  }
  if (t == "piecewise_linear") {
    const json& k = field(j, "knots");
    if (!k.is_array()) throw InvalidArgument("field 'knots' must be an array");
    std::vector<std::pair<double, double>> knots;
    for (const auto& e : k) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InvalidArgument("knots must be [x, value] pairs");
      }
      knots.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return LambdaSpec(lv::PiecewiseLinear{std::move(knots)}, declared);
  }
  if (t == "grid") return LambdaSpec(lv::GridSampled{numbers(j, "xs"), numbers(j, "values")}, declared);
  throw InvalidArgument("unknown Lambda type '" + t + "'");
}

LambdaSpec parse_lambda(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("Lambda spec is not valid JSON: ") + e.what());
  }
  return lambda_from_json(j);
}

json to_json(const CheckReport& report) {
  json j;
  j["axiom"] = report.axiom;
  j["verdict"] = to_string(report.verdict);
  j["trials"] = report.trials;
  j["skipped"] = report.skipped;
  j["flagged"] = report.flagged;
  j["seed"] = report.seed;
  j["witness"] = report.witness ? witness_json(*report.witness) : json(nullptr);
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

json to_json(const ZFunction& z) {
  json j = json::array();
  for (std::size_t i = 0; i < z.grid.size(); ++i) j.push_back({z.grid[i], to_json(z.values[i])});
  return j;
}

json to_json(const ReconstructionResult& result) {
  json j;
  j["side"] = to_string(result.side);
  j["z"] = result.z ? to_json(*result.z) : json(nullptr);
  j["lambda"] = result.lambda_spec ? to_json(*result.lambda_spec) : json(nullptr);
  j["precheck"] = json::array();
  for (const auto& r : result.prechecks) j["precheck"].push_back(to_json(r));
  j["verification"] = to_json(result.verification);
  return j;
}

}  // namespace lambdaq::json_io
