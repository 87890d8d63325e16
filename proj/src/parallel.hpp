#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rangewalk {

// Deterministic fork-join map over [0, count): each index is processed exactly
// once and results are written by index, so the outcome is identical for every
// worker count. Reductions over the results must then run in index order.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    if (workers < 1) workers = 1;
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (nw <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::vector<std::exception_ptr> errors(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        std::size_t lo = count * w / nw;
        std::size_t hi = count * (w + 1) / nw;
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace rangewalk
