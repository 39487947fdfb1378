// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace extremaldep {

// Worker cap: EXTREMALDEP_THREADS if set (>= 1), else hardware concurrency.
[[nodiscard]] inline unsigned thread_budget() {
    if (const char* env = std::getenv("EXTREMALDEP_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Count indices in [0, reps) where pred(i) is true. pred must be safe to call
// concurrently and must depend only on i (replications key their RNG off the
// index), so the count is identical for any thread split, including serial.
template <class Pred>
[[nodiscard]] long parallel_count(long reps, Pred&& pred) {
    unsigned workers = std::min<unsigned>(thread_budget(),
                                          static_cast<unsigned>(std::max<long>(1, reps)));
    if (workers <= 1 || reps < 256) {
        long c = 0;
        for (long i = 0; i < reps; ++i)
            if (pred(i)) ++c;
        return c;
    }
    std::vector<long> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long chunk = (reps + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const long lo = static_cast<long>(w) * chunk;
        const long hi = std::min(reps, lo + chunk);
        pool.emplace_back([&pred, &partial, w, lo, hi] {
            long c = 0;
            for (long i = lo; i < hi; ++i)
                if (pred(i)) ++c;
            partial[w] = c;
        });
    }
    for (auto& t : pool) t.join();
    long total = 0;
    for (long c : partial) total += c;
    return total;
}

}  // namespace extremaldep
