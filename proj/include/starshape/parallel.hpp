#pragma once
#include <cstddef>

namespace starshape {

/// Runtime switch between the OpenMP kernels and the serial reference path.
/// Defaults to parallel. The toggle is global and intended for tests and
/// benchmarking; library results are identical either way.
bool parallel_enabled();
void set_parallel_enabled(bool on);

int thread_count();
void set_thread_count(int n);  // n <= 0 restores the OpenMP default

template <class F>
void parallel_for(std::size_t count, F&& fn) {
    if (parallel_enabled() && count > 1) {
        const long m = static_cast<long>(count);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < m; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < count; ++i) fn(i);
    }
}

}  // namespace starshape
