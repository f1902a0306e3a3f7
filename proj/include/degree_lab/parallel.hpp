#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace degree_lab {

/// Runs body(i) for i in [0, count) on the OpenMP team. The first exception
/// thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Thread cap from DEGREE_LAB_THREADS, or 0 when unset or invalid.
int thread_cap_from_env();

/// Applies thread_cap_from_env() to the OpenMP runtime if set.
void configure_threads();

int max_threads();

}  // namespace degree_lab
