#include "maclab/parallel.hpp"

namespace maclab {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count()
{
  unsigned n = g_threads;
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

} // namespace maclab
