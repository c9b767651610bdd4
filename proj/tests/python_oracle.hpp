#pragma once

#include <optional>
#include <string>
#include <vector>

namespace flowc::test {

/// True when a Python 3 interpreter was found at configure time and runs.
bool python_available();

struct PythonRun {
  bool compiled = false;
  std::vector<std::string> lines;
  /// Exception type name when execution raised.
  std::optional<std::string> error;
};

/// Compiles and executes each source in one interpreter process.
std::vector<PythonRun> run_python_sources(const std::vector<std::string>& sources);

struct PythonValue {
  /// str() of the result, or the exception type name when `raised`.
  std::string text;
  bool raised = false;
};

/// Evaluates each expression with eval() in one interpreter process.
std::vector<PythonValue> eval_python_expressions(const std::vector<std::string>& exprs);

}  // namespace flowc::test
