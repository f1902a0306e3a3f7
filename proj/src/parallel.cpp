#include "degree_lab/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace degree_lab {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::exception_ptr first;
  std::mutex guard;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

int thread_cap_from_env() {
  const char* raw = std::getenv("DEGREE_LAB_THREADS");
  if (raw == nullptr) return 0;
  try {
    int v = std::stoi(raw);
    return v > 0 ? v : 0;
  } catch (...) {
    return 0;
  }
}

void configure_threads() {
#ifdef _OPENMP
  if (int cap = thread_cap_from_env(); cap > 0) omp_set_num_threads(cap);
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace degree_lab
