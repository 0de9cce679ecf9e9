// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "qmat/error.hpp"

namespace qmat {

/// Wall-clock and work-count limits shared by every long-running operation.
/// A default-constructed Budget never expires. tick() is safe to call from
/// several threads at once.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  Budget() = default;

  static Budget unlimited() { return Budget(); }

  static Budget milliseconds(int64_t ms) {
    Budget b;
    b.deadline_ = Clock::now() + std::chrono::milliseconds(ms);
    return b;
  }

  static Budget work(uint64_t units) {
    Budget b;
    b.max_work_ = units;
    return b;
  }

  Budget(const Budget& other)
      : deadline_(other.deadline_), max_work_(other.max_work_), used_(other.used_.load()) {}

  Budget& operator=(const Budget& other) {
    deadline_ = other.deadline_;
    max_work_ = other.max_work_;
    used_ = other.used_.load();
    return *this;
  }

  bool limited() const { return deadline_.has_value() || max_work_.has_value(); }
  uint64_t used() const { return used_.load(std::memory_order_relaxed); }

  /// Charges `units` of work; throws BudgetExceeded once a limit is crossed.
  void tick(uint64_t units = 1) {
    if (!limited()) return;
    const uint64_t before = used_.fetch_add(units, std::memory_order_relaxed);
    const uint64_t after = before + units;
    if (max_work_ && after > *max_work_) {
      throw Error(ErrorCode::kBudgetExceeded, "work limit of " + std::to_string(*max_work_) + " exceeded");
    }
    // The clock is only read every 4096 units.
    if (deadline_ && (before >> 12) != (after >> 12) && Clock::now() > *deadline_) {
      throw Error(ErrorCode::kBudgetExceeded, "time limit exceeded after " + std::to_string(after) + " units");
    }
  }

  void check_time() const {
    if (deadline_ && Clock::now() > *deadline_) throw Error(ErrorCode::kBudgetExceeded, "time limit exceeded");
  }

 private:
  std::optional<Clock::time_point> deadline_;
  std::optional<uint64_t> max_work_;
  std::atomic<uint64_t> used_{0};
};

}  // namespace qmat
