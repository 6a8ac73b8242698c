#include "nlgs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nlgs {

namespace {

unsigned initial_thread_count() {
    if (const char* env = std::getenv("NLGS_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return 1;
}

std::atomic<unsigned>& threads_setting() {
    static std::atomic<unsigned> n{initial_thread_count()};
    return n;
}

} // namespace

unsigned thread_count() noexcept { return threads_setting().load(); }

void set_thread_count(unsigned n) noexcept { threads_setting().store(std::max(1u, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        if (n > 0)
            body(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b < e)
            pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(0, std::min(n, chunk));
}

} // namespace nlgs
