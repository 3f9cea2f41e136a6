#include "hddist/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace hddist {

namespace {
std::atomic<int> g_override{0};

int from_environment() {
  const char* env = std::getenv("HDDIST_NUM_THREADS");
  if (env == nullptr) return 0;
  try {
    return std::stoi(env);
  } catch (...) {
    return 0;
  }
}
}  // namespace

int thread_count() {
  // Kernels called from inside a parallel region (e.g. one replicate of an
  // experiment) run single-threaded.
  if (omp_in_parallel()) return 1;
  if (const int n = g_override.load(); n > 0) return n;
  static const int env = from_environment();
  if (env > 0) return env;
  return omp_get_max_threads();
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

}  // namespace hddist
