#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pmc {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// A time, memory or size cap was hit before the answer was complete.
/// Carries the decisions taken so far so callers can still report them.
class LimitExceeded : public std::runtime_error {
public:
  explicit LimitExceeded(const std::string &what, std::uint64_t decisions = 0)
      : std::runtime_error(what), decisions(decisions) {}

  std::uint64_t decisions;
};

/// An internal invariant was violated. Never expected on valid input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace pmc
