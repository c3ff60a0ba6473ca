// Copyright 2026 The sg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SG_THREADS_HPP_
#define SG_THREADS_HPP_

// Minimal data-parallel loop.  Work items must be independent; callers keep
// determinism by writing into index-addressed slots and aggregating in
// index order afterwards.  SG_THREADS caps the pool (1 disables threading).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sg {

inline int thread_budget() {
  if (const char* env = std::getenv("SG_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [begin, end) on up to thread_budget() workers.
// Exceptions inside fn terminate the process; keep bodies exception-free
// or pre-validate inputs.
template <typename F>
void parallel_for(int begin, int end, F&& fn) {
  int count = end - begin;
  if (count <= 0) return;
  int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int> next(begin);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= end) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace sg

#endif  // SG_THREADS_HPP_
