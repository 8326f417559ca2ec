// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace cfemhd {

// Worker count from MHD_THREADS (unset or 0: sequential).
int worker_count();
void set_worker_count(int n);

// Calls f(begin, end) on contiguous chunks of [0, n). Chunks never overlap,
// so callers that write disjoint outputs stay deterministic.
template <class F>
void parallel_for(int n, F&& f)
{
  const int workers = std::min(worker_count(), n / 16);
  if (workers <= 1) {
    f(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    const int b = w * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([&f, b, e] { f(b, e); });
  }
  f(0, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace cfemhd
