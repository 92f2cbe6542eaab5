// ps-bench: times the OpenMP kernels against their serial reference
// implementations and prints a small table. Results are checked for equality
// while timing, so a speedup next to a wrong answer cannot happen silently.
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "pst/coprime.hpp"
#include "pst/psseq.hpp"
#include "pst/realpow.hpp"
#include "pst/reference.hpp"

using namespace pst;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int mismatches = 0;

// Counts must agree exactly; the exponential sum is compared up to rounding
// noise because the parallel reduction and the naive left-fold round
// differently.
template <class T>
bool agree(const T& a, const T& b) {
    return a == b;
}
bool agree(const std::complex<double>& a, const std::complex<double>& b) {
    return std::abs(a - b) <= 1e-8;
}

template <class F, class G>
void bench_row(const char* label, F&& parallel_fn, G&& serial_fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto serial = serial_fn();
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = parallel_fn();
    const double parallel_ms = ms_since(t0);

    const bool ok = agree(serial, parallel);
    if (!ok) ++mismatches;
    std::printf("%-28s %10.1f %10.1f %8.2fx   %s\n", label, serial_ms, parallel_ms,
                serial_ms / parallel_ms, ok ? "match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    // Optional scale factor: ./ps-bench 2 doubles the default sizes.
    const double scale = argc > 1 ? std::atof(argv[1]) : 1.0;
    if (scale <= 0) {
        std::fprintf(stderr, "usage: %s [scale > 0]\n", argv[0]);
        return 2;
    }

    const OrderSpec c32 = OrderSpec::rational(3, 2);
    const OrderSpec root2 = OrderSpec::sqrt_int(2);
    Budgets budgets;
    budgets.max_bruteforce = 4'000'000'000ULL;

    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial/ms", "openmp/ms", "speedup");

    {
        const double x = 200'000 * scale;
        bench_row("floor-sequence c=3/2",
                  [&] { return floor_sequence(x, c32); },
                  [&] { return ref::floor_sequence(x, c32); });
    }
    {
        const double x = 150'000 * scale;
        const auto values = floor_sequence(x, root2);
        bench_row("count-ap c=sqrt:2 q=7",
                  [&] { return count_ap_in(values, 3, 7); },
                  [&] { return ref::count_ap_in(values, 3, 7); });
    }
    {
        const TupleSpec spec({c32, c32}, 1'200 * scale);
        bench_row("coprime-pairs brute c=3/2",
                  [&] { return coprime_tuples_bruteforce(spec, budgets); },
                  [&] { return ref::coprime_tuples_bruteforce(spec, budgets); });
    }
    {
        const double x = 5'000 * scale;
        bench_row("coprime-pairs mobius c=3/2",
                  [&] { return coprime_pairs_mobius(x, c32); },
                  [&] { return ref::coprime_pairs_mobius(x, c32); });
    }
    {
        const DyadicBlock block(32'768 * scale, 65'536 * scale);
        const PhaseParams phase{3, 7, c32};
        bench_row("weyl-sum c=3/2 h=3 q=7",
                  [&] { return weyl_sum(block, phase); },
                  [&] { return ref::weyl_sum(block, phase); });
    }
    {
        const double x = 100'000 * scale;
        bench_row("dd-count c=sqrt:2",
                  [&] { return dd_coprime_count(x, root2); },
                  [&] { return ref::dd_coprime_count(x, root2); });
    }
    {
        const double x = 60'000 * scale;
        bench_row("tau-sum c=3/2",
                  [&] { return tau_sum(x, c32); },
                  [&] { return ref::tau_sum(x, c32); });
    }

    if (mismatches) {
        std::fprintf(stderr, "\n%d kernel(s) disagreed with the reference\n", mismatches);
        return 1;
    }
    return 0;
}
