#pragma once

#include <cstddef>
#include <vector>

#ifdef PATHHJ_HAVE_OPENMP
#include <omp.h>
#endif

namespace pathhj {

/// OpenMP-backed index map: out[i] = fn(i) for i in [0, count).
/// Each slot is written by exactly one iteration and reductions downstream
/// run in index order, so results are bitwise independent of the worker
/// count. `parallel_fill` is the kernel; `serial_fill` is the reference
/// implementation the tests and the benchmark compare against.
template <typename T, typename Fn>
void serial_fill(std::vector<T>& out, size_t count, Fn&& fn) {
    out.resize(count);
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
}

template <typename T, typename Fn>
void parallel_fill(std::vector<T>& out, size_t count, Fn&& fn) {
    out.resize(count);
#ifdef PATHHJ_HAVE_OPENMP
    const long long m = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < m; ++i) out[static_cast<size_t>(i)] = fn(static_cast<size_t>(i));
#else
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
#endif
}

inline int worker_count() {
#ifdef PATHHJ_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_worker_count(int workers) {
#ifdef PATHHJ_HAVE_OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#else
    (void)workers;
#endif
}

}  // namespace pathhj
