// parallel.hpp — deterministic reduction and static work splitting

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace hom {

struct Execution {
    unsigned threads = 0; // 0 = hardware concurrency

    unsigned resolved() const {
        if (threads > 0) return threads;
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

// Pairwise (cascade) sum of term(0) .. term(n-1). The association order
// depends only on n, so the result is reproducible bit for bit.
template <typename Term>
double pairwise_sum(std::size_t first, std::size_t last, const Term& term) {
    constexpr std::size_t block = 32;
    const std::size_t n = last - first;
    if (n <= block) {
        double acc = 0.0;
        for (std::size_t i = first; i < last; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = first + n / 2;
    return pairwise_sum(first, mid, term) + pairwise_sum(mid, last, term);
}

template <typename Term>
double pairwise_sum(std::size_t n, const Term& term) {
    return pairwise_sum(std::size_t{0}, n, term);
}

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so results written per index do not depend on the thread count.
template <typename Body>
void parallel_for(std::size_t n, const Execution& exec, const Body& body) {
    const std::size_t workers = std::min<std::size_t>(exec.resolved(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
}

} // namespace hom
