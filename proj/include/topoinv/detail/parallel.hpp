#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace topoinv {

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    for (unsigned w = 0; w < n; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& t : workers)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace topoinv
