#pragma once

#include <stdexcept>
#include <string>

namespace bcdb {

// Schema-level problems: unknown relation/attribute, arity mismatch.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mixed-type order comparisons and aggregate misuse are hard errors.
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unsafe query body; carries the first offending variable.
struct SafetyError : std::runtime_error {
  std::string variable;
  explicit SafetyError(std::string var)
      : std::runtime_error("unsafe query: variable '" + var +
                           "' does not occur in a positive atom"),
        variable(std::move(var)) {}
};

// Resource guards for intentionally exponential procedures.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An algorithm was invoked outside its constraint-type precondition.
struct DispatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Positioned parse error (1-based line and column).
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" +
                           std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_) {}
};

}  // namespace bcdb
