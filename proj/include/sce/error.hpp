#pragma once

#include <stdexcept>
#include <string>

namespace sce {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed files, violated instance invariants,
// out-of-domain arguments, unmet translation preconditions.
struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(msg) {}
};

struct ParseError : InputError {
  ParseError(const std::string& msg, int line_no)
      : InputError("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
  int line;
};

// Internal evaluation failures (missing table entries, inconsistent codes).
struct EvalError : Error {
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

}  // namespace sce
