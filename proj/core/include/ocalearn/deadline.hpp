#pragma once

#include <chrono>
#include <optional>

namespace ocalearn {

/// Cooperative wall-clock budget. Long-running loops poll `expired()`.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;  // never expires

  static Deadline never() { return Deadline{}; }
  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    d.at_ = Clock::now() + budget;
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  bool bounded() const { return at_.has_value(); }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace ocalearn
