#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstring>
#include <vector>

#include <omp.h>

#include "pst/coprime.hpp"
#include "pst/errors.hpp"
#include "pst/parallel.hpp"
#include "pst/psseq.hpp"
#include "pst/realpow.hpp"
#include "pst/reference.hpp"

using namespace pst;

namespace {

const OrderSpec kC32 = OrderSpec::parse("3/2");
const OrderSpec kSqrt2 = OrderSpec::parse("sqrt:2");

// Runs fn under 1, 2, 3 and 8 OpenMP threads and hands back the results.
template <class F>
auto with_thread_counts(F&& fn) {
    std::vector<decltype(fn())> results;
    const int saved = omp_get_max_threads();
    for (int t : {1, 2, 3, 8}) {
        omp_set_num_threads(t);
        results.push_back(fn());
    }
    omp_set_num_threads(saved);
    return results;
}

bool bit_identical(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}
bool bit_identical(const std::complex<double>& a, const std::complex<double>& b) {
    return bit_identical(a.real(), b.real()) && bit_identical(a.imag(), b.imag());
}

} // namespace

TEST_CASE("chunked reduction is bit-identical for any worker count") {
    // Floating-point payload where summation order would show immediately.
    auto sum = [] {
        return chunked_reduce<double>(0, 100'000, 4096, [](uint64_t a, uint64_t b) {
            double partial = 0;
            for (uint64_t i = a; i < b; ++i)
                partial += 1.0 / (1.0 + static_cast<double>(i) * 0.001);
            return partial;
        });
    };
    const auto results = with_thread_counts(sum);
    for (size_t i = 1; i < results.size(); ++i) CHECK(bit_identical(results[0], results[i]));
}

TEST_CASE("exponential sums are bit-identical for any worker count") {
    auto sum = [] {
        return weyl_sum(DyadicBlock(8192, 16384), PhaseParams{3, 7, kSqrt2});
    };
    const auto results = with_thread_counts(sum);
    for (size_t i = 1; i < results.size(); ++i) CHECK(bit_identical(results[0], results[i]));
}

TEST_CASE("floor sequences and counts do not depend on the worker count") {
    auto floors = [] { return floor_sequence(5'000, kC32); };
    const auto seqs = with_thread_counts(floors);
    for (size_t i = 1; i < seqs.size(); ++i) CHECK(seqs[0] == seqs[i]);

    auto mobius = [] { return coprime_pairs_mobius(700, kC32); };
    const auto counts = with_thread_counts(mobius);
    for (size_t i = 1; i < counts.size(); ++i) CHECK(counts[0] == counts[i]);
}

TEST_CASE("production kernels match the serial reference implementations") {
    CHECK(floor_sequence(3'000, kSqrt2) == ref::floor_sequence(3'000, kSqrt2));

    const auto values = floor_sequence(2'000, kC32);
    for (uint64_t q : {uint64_t{3}, uint64_t{17}})
        for (int64_t a = 0; a < static_cast<int64_t>(q); a += 2)
            CHECK(count_ap_in(values, a, q) == ref::count_ap_in(values, a, q));

    const TupleSpec pairs({kC32, kC32}, 150);
    CHECK(coprime_tuples_bruteforce(pairs) == ref::coprime_tuples_bruteforce(pairs));
    const TupleSpec triple({kC32, kSqrt2, OrderSpec::parse("1")}, 30);
    CHECK(coprime_tuples_bruteforce(triple) == ref::coprime_tuples_bruteforce(triple));

    CHECK(coprime_pairs_mobius(900, kSqrt2) == ref::coprime_pairs_mobius(900, kSqrt2));

    // The parallel sum and the naive left-fold agree to rounding noise.
    const DyadicBlock block(2048, 4096);
    const PhaseParams p{5, 11, kC32};
    const std::complex<double> a = weyl_sum(block, p);
    const std::complex<double> b = ref::weyl_sum(block, p);
    CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-10));
    CHECK(a.imag() == doctest::Approx(b.imag()).epsilon(1e-10));

    CHECK(dd_coprime_count(4'000, kSqrt2) == ref::dd_coprime_count(4'000, kSqrt2));
    CHECK(tau_sum(3'000, kC32) == ref::tau_sum(3'000, kC32));
}

TEST_CASE("exceptions inside parallel regions surface exactly once") {
    // floor(n^5) leaves 64 bits around n = 7132; the error must arrive as a
    // clean BudgetError regardless of which worker hits it first.
    CHECK_THROWS_AS(floor_sequence(10'000, OrderSpec::parse("5")), BudgetError);

    ErrorCollector errors;
#pragma omp parallel for
    for (int i = 0; i < 100; ++i)
        errors.run([&] {
            if (i % 10 == 3) throw std::runtime_error("boom");
        });
    CHECK_THROWS_AS(errors.rethrow(), std::runtime_error);

    ErrorCollector clean;
    CHECK_NOTHROW(clean.rethrow());
}

TEST_CASE("chunk boundaries do not depend on the range offset") {
    // Same chunk layout contract: a sum over [a, b) equals the serial sum.
    auto direct = [](uint64_t a, uint64_t b) {
        double s = 0;
        for (uint64_t i = a; i < b; ++i) s += static_cast<double>(i % 97) * 0.5;
        return s;
    };
    for (uint64_t lo : {uint64_t{0}, uint64_t{1}, uint64_t{4095}, uint64_t{4096}}) {
        const uint64_t hi = lo + 10'001;
        const double parallel = chunked_reduce<double>(lo, hi, 4096, [&](uint64_t a, uint64_t b) {
            return direct(a, b);
        });
        CHECK(parallel == doctest::Approx(direct(lo, hi)).epsilon(1e-12));
    }
}
