#pragma once

// Index-parallel map used by the kernels. Every kernel that takes an
// Execution argument has a serial path that is the reference
// implementation; the parallel path writes each index exactly once so both
// produce bit-identical results.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace homflow {

enum class Execution { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Calls body(i) for i in [0, n). Exceptions are captured per index and the
/// one with the smallest index is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Execution exec, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace homflow
