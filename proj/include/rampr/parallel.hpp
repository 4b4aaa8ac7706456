#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rampr {

/// Run fn(0..count-1) on up to `workers` threads and return the results in
/// index order. Scheduling never influences the output, so single- and
/// multi-worker runs are byte-identical; the first failing index's exception
/// is rethrown.
template <class R>
std::vector<R> parallel_map(size_t count, unsigned workers, const std::function<R(size_t)>& fn) {
    std::vector<R> out(count);
    if (count == 0) return out;
    if (workers <= 1 || count == 1) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<size_t> cursor{0};
    std::vector<std::exception_ptr> errors(count);
    unsigned nw = static_cast<unsigned>(std::min<size_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            size_t i;
            while ((i = cursor.fetch_add(1)) < count) {
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

} // namespace rampr
