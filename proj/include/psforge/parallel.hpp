#pragma once
// Minimal row-parallel helper.  PSFORGE_THREADS caps the worker count; work
// items are claimed atomically, so results never depend on the thread count.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psforge {

inline unsigned threadBudget() {
    unsigned budget = std::thread::hardware_concurrency();
    if (budget == 0) budget = 1;
    if (const char* env = std::getenv("PSFORGE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024)
            budget = static_cast<unsigned>(v);
    }
    return budget;
}

template <typename Fn>
void parallelFor(int begin, int end, Fn&& fn) {
    if (end <= begin) return;
    const unsigned count = static_cast<unsigned>(end - begin);
    const unsigned workers = std::min(threadBudget(), count);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<int> next{begin};
    std::atomic<bool> failed{false};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto body = [&] {
        for (int i = next.fetch_add(1); i < end && !failed.load(); i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (firstError) std::rethrow_exception(firstError);
}

}  // namespace psforge
