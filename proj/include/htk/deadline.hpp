#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>

namespace htk {

// Cooperative time budget. Solvers poll expired() at every candidate step;
// the harness additionally wires a shared cancellation flag into racing runs.
class Deadline {
 public:
  Deadline() = default;  // never expires

  static Deadline never() { return Deadline{}; }

  static Deadline after_ms(std::int64_t ms) {
    Deadline d;
    d.at_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return d;
  }

  Deadline with_cancel(const std::atomic<bool>* flag) const {
    Deadline d = *this;
    d.cancel_ = flag;
    return d;
  }

  bool expired() const {
    if (cancel_ && cancel_->load(std::memory_order_relaxed)) return true;
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
  const std::atomic<bool>* cancel_ = nullptr;
};

}  // namespace htk
