#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "pmc/errors.hpp"

namespace pmc {

/// Cooperative time limit. Solvers call tick() once per propagation and the
/// clock is only read every 2^14 ticks.
class Deadline {
public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : until_(Clock::now() +
               std::chrono::duration_cast<Clock::duration>(budget)) {}

  static Deadline never() { return {}; }

  bool unlimited() const { return !until_.has_value(); }

  void tick(std::uint64_t decisions = 0) {
    if (!until_)
      return;
    if ((++ticks_ & kCheckMask) != 0)
      return;
    check(decisions);
  }

  void check(std::uint64_t decisions = 0) const {
    if (until_ && Clock::now() >= *until_)
      throw LimitExceeded("time limit reached", decisions);
  }

private:
  static constexpr std::uint64_t kCheckMask = (1u << 14) - 1;

  std::optional<Clock::time_point> until_;
  std::uint64_t ticks_ = 0;
};

} // namespace pmc
