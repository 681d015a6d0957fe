#include "ggeval/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ggeval {

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_threads(unsigned n) { g_workers.store(n); }

unsigned worker_threads() {
    unsigned n = g_workers.load();
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0)
            n = 1;
    }
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = worker_threads();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    const unsigned used = static_cast<unsigned>(
        std::min<std::size_t>(workers, count));
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto run_chunk = [&](unsigned w) {
        // Static chunking: worker w owns [lo, hi).
        const std::size_t lo = count * w / used;
        const std::size_t hi = count * (w + 1) / used;
        try {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(used - 1);
    for (unsigned w = 1; w < used; ++w)
        pool.emplace_back(run_chunk, w);
    run_chunk(0);
    for (auto& t : pool)
        t.join();

    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace ggeval
