#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fracdiff {

/// Runs fn(i) for i in [begin, end) split into contiguous chunks over `workers` threads.
/// The first exception thrown by any chunk is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned workers, Fn&& fn) {
    const std::size_t count = end > begin ? end - begin : 0;
    if (workers <= 1 || count < 2) {
        for (std::size_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(workers, count);
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t lo = begin + count * c / chunks;
            const std::size_t hi = begin + count * (c + 1) / chunks;
            threads.emplace_back([&, lo, hi, c] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) {
                        fn(i);
                    }
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace fracdiff
