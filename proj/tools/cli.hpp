#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lambdaq/axiom_checks.hpp"
#include "lambdaq/lambda_functions.hpp"
#include "lambdaq/quantile_engine.hpp"

namespace lambdaq::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kSpecError = 3, kHypothesisError = 4 };

// Runs one command. `args` excludes the program name. Output goes to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A resolved --functional selector.
struct Selector {
  std::string text;
  FunctionalHandle handle;
  std::optional<LambdaSpec> spec;  // as given, before grid interpolation
  std::optional<QuantileKind> kind;
};

// <qminus|qplus|qtilde-minus|qtilde-plus>:<lambda> with <lambda> one of
// constant:C, two_level:A,B,XBAR, json:PATH, grid:PATH; or one of the plain
// names mean, esssup, essinf, zero.
Selector parse_selector(const std::string& text);

// Loss observations: one number per line, blank lines ignored, an optional
// non-numeric header line.
std::vector<double> read_losses(const std::string& path);

// Lambda from a file: JSON spec, or CSV rows "x,value" read as a grid.
LambdaSpec read_lambda_file(const std::string& path);

// Theoretical verdict of a suite for a built-in selector: "pass", "fail" or
// "unknown".
std::string expected_verdict(const Selector& sel, const std::string& axiom);

}  // namespace lambdaq::cli
