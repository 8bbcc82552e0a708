#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace skyjam {

/// Worker count: hardware concurrency, capped by SKYJAM_THREADS when set.
inline std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SKYJAM_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Indices are
/// handed out dynamically; the first exception thrown is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t workers = worker_count()) {
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
        body();
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace skyjam
