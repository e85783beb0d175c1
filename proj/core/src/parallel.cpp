#include "zmc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace zmc {

int worker_count() {
    if (const char* env = std::getenv("ZMC_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_rows(int rows, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), rows);
    if (workers <= 1) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(rows));
    std::atomic<int> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int r = next++; r < rows; r = next++) {
                    try {
                        body(r);
                    } catch (...) {
                        errors[static_cast<std::size_t>(r)] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace zmc
