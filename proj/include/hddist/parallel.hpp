#pragma once

namespace hddist {

// Thread count used by every OpenMP kernel in the library. Resolution order:
// an explicit set_thread_count() override, then the HDDIST_NUM_THREADS
// environment variable, then OpenMP's default (available parallelism).
int thread_count();

// n <= 0 clears the override.
void set_thread_count(int n);

}  // namespace hddist
