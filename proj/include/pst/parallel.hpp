#pragma once
#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <utility>
#include <vector>

namespace pst {

// Captures the first exception thrown inside an OpenMP region so it can be
// rethrown after the region ends (exceptions must not escape a parallel
// loop).
class ErrorCollector {
public:
    template <class F>
    void run(F&& f) noexcept {
        try {
            f();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu_);
            if (!first_) first_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (first_) std::rethrow_exception(first_);
    }

private:
    std::exception_ptr first_;
    std::mutex mu_;
};

// Deterministic parallel reduction for values where addition order matters
// (floating point): the index range is cut into fixed-size chunks, each chunk
// is accumulated serially in index order, and the per-chunk results are
// combined by a fixed-shape pairwise tree. The result is bit-identical for
// any number of threads.
template <class T, class ChunkFn>
T chunked_reduce(uint64_t lo, uint64_t hi, uint64_t chunk_size, ChunkFn&& per_chunk) {
    if (hi <= lo) return T{};
    const uint64_t nchunks = (hi - lo + chunk_size - 1) / chunk_size;
    std::vector<T> partial(nchunks, T{});
    ErrorCollector errors;
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t ci = 0; ci < static_cast<int64_t>(nchunks); ++ci) {
        errors.run([&, ci] {
            const uint64_t a = lo + static_cast<uint64_t>(ci) * chunk_size;
            const uint64_t b = std::min(hi, a + chunk_size);
            partial[static_cast<size_t>(ci)] = per_chunk(a, b);
        });
    }
    errors.rethrow();
    while (partial.size() > 1) {
        std::vector<T> next((partial.size() + 1) / 2, T{});
        for (size_t i = 0; i + 1 < partial.size(); i += 2) next[i / 2] = partial[i] + partial[i + 1];
        if (partial.size() % 2) next.back() = partial.back();
        partial = std::move(next);
    }
    return partial[0];
}

} // namespace pst
