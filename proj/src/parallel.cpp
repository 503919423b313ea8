#include "walshlab/parallel.hpp"

#include <atomic>

namespace walshlab {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned worker_threads() {
  unsigned t = g_threads.load();
  if (t == 0) t = std::max(1U, std::thread::hardware_concurrency());
  return t;
}

void set_worker_threads(unsigned count) { g_threads.store(count); }

}  // namespace walshlab
