#pragma once

#include <cstdlib>
#include <omp.h>

namespace ggt {

// Honors GT_THREADS; call once from each entry point (CLI, tests, bench).
inline void init_threads_from_env() {
  const char* env = std::getenv("GT_THREADS");
  if (env == nullptr) return;
  int n = std::atoi(env);
  if (n >= 1) omp_set_num_threads(n);
}

inline int worker_count() { return omp_get_max_threads(); }

}  // namespace ggt
