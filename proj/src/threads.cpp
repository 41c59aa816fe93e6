#include "monoq2/threads.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monoq2 {

void apply_thread_cap_from_env() {
#ifdef _OPENMP
  const char* env = std::getenv("MONOTONE_Q2_THREADS");
  if (!env) return;
  const int cap = std::atoi(env);
  if (cap > 0) omp_set_num_threads(cap);
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace monoq2
