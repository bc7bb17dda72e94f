#pragma once

#include <stdexcept>
#include <string>

namespace urnchain {

/// Malformed input file (scenario config, schedule CSV). `line` is 1-based,
/// 0 when no line is attributable.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A model assumption does not hold for the given inputs: non-monotone
/// default probabilities across the reliability order, a schedule that
/// defaults more firms than exist, a chain that is already certain to
/// default before the last group.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact enumeration was asked to exceed its configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace urnchain
