// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mapalign::detail {

inline int hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::atomic<int>& thread_override() {
  static std::atomic<int> t{0};
  return t;
}

// 0 restores the default (env MAPALIGN_THREADS, else hardware count).
inline void set_threads(int t) { thread_override().store(t < 0 ? 0 : t); }

inline int threads() {
  const int t = thread_override().load();
  if (t > 0) return t;
  if (const char* env = std::getenv("MAPALIGN_THREADS")) {
    const int e = std::atoi(env);
    if (e > 0) return e;
  }
  return hardware_threads();
}

// Static block partition; fn(begin, end) must not touch shared mutable
// state, so results are independent of the partition.
template <typename F>
void parallel_for(std::int64_t count, F&& fn, int nthreads = 0) {
  if (nthreads <= 0) nthreads = threads();
  if (count <= 0) return;
  if (nthreads > count) nthreads = static_cast<int>(count);
  if (nthreads <= 1) {
    fn(static_cast<std::int64_t>(0), count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  const std::int64_t chunk = (count + nthreads - 1) / nthreads;
  for (int t = 1; t < nthreads; ++t) {
    const std::int64_t b = t * chunk;
    const std::int64_t e = std::min<std::int64_t>(b + chunk, count);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(static_cast<std::int64_t>(0), std::min<std::int64_t>(chunk, count));
  for (auto& th : pool) th.join();
}

}  // namespace mapalign::detail
