#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cst::detail {

// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker so
// results written per index do not depend on scheduling.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn)
{
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::clamp(nt, 1, std::max(1, n));
    if (nt == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    int err_index = n;
    std::mutex err_mu;
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                // keep the lowest failing index so the reported error is deterministic
                std::lock_guard<std::mutex> lk(err_mu);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cst::detail
