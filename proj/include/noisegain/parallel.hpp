#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace noisegain {

// Execution policy for the data-parallel loops (Monte Carlo trials, FFT
// row/column passes, per-map spectral measurements). The serial path is the
// reference implementation; the OpenMP path must produce bit-identical
// results, which holds because every iteration writes only its own slot and
// reductions happen afterwards in index order.
enum class Exec { serial, parallel };

inline Exec& default_exec() {
    static Exec mode = Exec::parallel;
    return mode;
}

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename Body>
inline void parallel_for(std::size_t n, Exec mode, Body&& body) {
#if defined(_OPENMP)
    if (mode == Exec::parallel) {
        // Exceptions must not unwind out of the parallel region; stash the
        // first one and rethrow on the calling thread.
        std::exception_ptr failure = nullptr;
        #pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                #pragma omp critical(noisegain_parallel_for_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

// Runs `trial(t)` for t in [0, trials) and returns the per-trial values in
// trial order. Deterministic reduction: callers sum the returned vector
// front-to-back.
template <typename Trial>
inline std::vector<double> run_trials(std::size_t trials, Exec mode, Trial&& trial) {
    std::vector<double> out(trials);
    parallel_for(trials, mode, [&](std::size_t t) { out[t] = trial(t); });
    return out;
}

}  // namespace noisegain
