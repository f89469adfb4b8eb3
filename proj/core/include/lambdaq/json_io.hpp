#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lambdaq/axiom_checks.hpp"
#include "lambdaq/distributions.hpp"
#include "lambdaq/extended_real.hpp"
#include "lambdaq/lambda_functions.hpp"
#include "lambdaq/reconstruction.hpp"

namespace lambdaq::json_io {

using nlohmann::json;

// Infinite values are written as the strings "+inf" / "-inf".
json to_json(const ExtendedReal& x);
ExtendedReal extended_from_json(const json& j);

// {"breakpoints": [...], "cum_probs": [...]}
json to_json(const StepCDF& f);
StepCDF step_cdf_from_json(const json& j);

// {"type": "constant", "level": c}
// {"type": "two_level", "alpha": a, "beta": b, "xbar": x}
// {"type": "step", "breakpoints": [...], "values": [...], "continuity": "right"|"left"}
// {"type": "piecewise_linear", "knots": [[x, v], ...]}
// {"type": "grid", "xs": [...], "values": [...]}
// An optional "monotonicity" field declares the shape and is validated.
// Malformed documents raise InvalidArgument.
json to_json(const LambdaSpec& spec);
LambdaSpec lambda_from_json(const json& j);
LambdaSpec parse_lambda(const std::string& text);

json to_json(const CheckReport& report);
json to_json(const ZFunction& z);
json to_json(const ReconstructionResult& result);

}  // namespace lambdaq::json_io
