#pragma once

#include <atomic>
#include <exception>
#include <utility>

#include <omp.h>

namespace ferro::par {

// Process-wide switch between the OpenMP kernels and the serial reference
// path. The serial path executes the identical loop body in index order;
// kernels write to disjoint slots, so both paths produce bit-identical
// results and tests compare them directly.

inline std::atomic<bool>& enabled_flag() {
    static std::atomic<bool> flag{true};
    return flag;
}

inline bool enabled() { return enabled_flag().load(std::memory_order_relaxed); }
inline void set_enabled(bool on) { enabled_flag().store(on, std::memory_order_relaxed); }

inline void set_threads(int n) {
    if (n <= 0) return;
    omp_set_num_threads(n);
}

// RAII guard used by tests and the benchmark to force the serial path.
struct serial_section {
    bool previous;
    serial_section() : previous(enabled()) { set_enabled(false); }
    ~serial_section() { set_enabled(previous); }
    serial_section(const serial_section&) = delete;
    serial_section& operator=(const serial_section&) = delete;
};

// Nesting depth per thread: loops inside an already-parallel region run
// serially instead of spawning nested teams.
inline thread_local int nesting_depth = 0;

// Parallel loop over [0, n). Exceptions thrown by the body are captured and
// rethrown on the calling thread (the first one wins).
template <class F>
void parallel_for(long n, F&& body, long grain = 2) {
    if (!enabled() || n < grain || nesting_depth > 0) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        if (err) continue;
        struct Depth {
            Depth() { ++nesting_depth; }
            ~Depth() { --nesting_depth; }
        } depth_guard;
        try {
            body(i);
        } catch (...) {
#pragma omp critical(ferro_par_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace ferro::par
