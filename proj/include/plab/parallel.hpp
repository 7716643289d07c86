#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace plab {

// PAINLEVE_LAB_THREADS, else the hardware concurrency
inline unsigned worker_count() {
    if (const char* env = std::getenv("PAINLEVE_LAB_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return unsigned(n);
        } catch (const std::exception&) {
        }
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

// runs fn(i) for i in [0, n); results land in index order
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F fn, unsigned workers = worker_count()) {
    std::vector<R> out(n);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace plab
