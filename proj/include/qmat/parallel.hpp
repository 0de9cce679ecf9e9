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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qmat {

inline uint32_t default_shards() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(shard) for shard = 0..shards-1 on up to hardware_concurrency
/// threads and returns the per-shard results in shard order. The first
/// exception thrown by any shard is rethrown here after all workers stop.
template <typename Result, typename Fn>
std::vector<Result> run_shards(uint32_t shards, Fn&& fn) {
  if (shards == 0) shards = 1;
  std::vector<Result> results(shards);
  const uint32_t workers = std::min<uint32_t>(shards, default_shards());
  if (workers <= 1) {
    for (uint32_t s = 0; s < shards; ++s) results[s] = fn(s);
    return results;
  }
  std::atomic<uint32_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load()) {
        const uint32_t s = next.fetch_add(1);
        if (s >= shards) return;
        try {
          results[s] = fn(s);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace qmat
