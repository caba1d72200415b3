#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blocklab {

using Gas = std::int64_t;
using Value = std::int64_t;

// Malformed input text. `line` is 1-based; 0 means the whole document.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// Structurally valid input that asks for an unsupported or inconsistent setup.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input exceeds a documented solver or search bound.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal invariant broke. Never reachable through valid inputs.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace blocklab
