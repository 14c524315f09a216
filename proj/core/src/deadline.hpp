#pragma once

#include <chrono>
#include <cstdint>

namespace ncd::detail {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(Clock::duration budget) : at_(Clock::now() + budget) {}
  explicit Deadline(Clock::time_point at) : at_(at) {}

  [[nodiscard]] bool expired() const { return Clock::now() >= at_; }
  [[nodiscard]] Clock::duration remaining() const { return at_ - Clock::now(); }
  [[nodiscard]] Clock::time_point at() const { return at_; }

 private:
  Clock::time_point at_;
};

inline std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

}  // namespace ncd::detail
