#include "nonloc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nonloc {

namespace {

std::atomic<int> g_default_threads{0};

}  // namespace

void set_default_threads(int threads) {
    g_default_threads.store(std::max(0, threads));
}

int default_threads() {
    const int set = g_default_threads.load();
    if (set > 0) {
        return set;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 0) {
        threads = default_threads();
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) {
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back(run, begin, end);
    }
    run(0, std::min(count, chunk));
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace nonloc
