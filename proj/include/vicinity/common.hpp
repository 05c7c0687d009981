#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vicinity {

using NodeId = std::uint32_t;
using Weight = double;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

// Malformed input documents (edge lists, configs, containers).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Caller passed arguments outside an operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An oracle constructor could not produce a structure (disconnected input,
// exhausted retries, ...).
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative comparison used wherever two distances were summed along different
// edge orders. Identical summation orders are compared with == instead.
inline constexpr double kRelativeTolerance = 1e-9;

inline bool approx_le(Weight a, Weight b, double rel = kRelativeTolerance) {
  return a <= b + rel * std::max(std::abs(a), std::abs(b));
}

inline bool approx_eq(Weight a, Weight b, double rel = kRelativeTolerance) {
  return approx_le(a, b, rel) && approx_le(b, a, rel);
}

}  // namespace vicinity
