// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cfemhd {

namespace {

int from_env()
{
  const char* s = std::getenv("MHD_THREADS");
  if (!s || !*s) return 1;
  try {
    return std::max(1, std::stoi(s));
  } catch (...) {
    return 1;
  }
}

std::atomic<int>& workers()
{
  static std::atomic<int> w{from_env()};
  return w;
}

}  // namespace

int worker_count() { return workers().load(std::memory_order_relaxed); }

void set_worker_count(int n) { workers().store(std::max(1, n), std::memory_order_relaxed); }

}  // namespace cfemhd
