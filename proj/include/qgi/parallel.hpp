#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qgi {

/// Worker cap from QGI_THREADS; unset, empty, or 0 means hardware concurrency.
inline unsigned worker_count_from_env() {
    const char* raw = std::getenv("QGI_THREADS");
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (raw == nullptr || *raw == '\0') return hw;
    try {
        const long v = std::stol(raw);
        if (v <= 0) return hw;
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        return hw;
    }
}

/// out[i] = fn(in[i]); items are claimed dynamically, results land in input order.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& in, unsigned workers, Fn fn)
    -> std::vector<decltype(fn(in.front()))> {
    using Out = decltype(fn(in.front()));
    std::vector<Out> out(in.size());
    if (workers <= 1 || in.size() <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, in.size()));
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < in.size(); i = next++) {
                try {
                    out[i] = fn(in[i]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace qgi
