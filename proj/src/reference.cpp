#include "pst/reference.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "pst/errors.hpp"
#include "pst/realpow.hpp"

// Straight-line serial counterparts of the OpenMP kernels. Tests compare
// these against production output; ps-bench times both.
namespace pst::ref {

std::vector<uint64_t> floor_sequence(double x, const OrderSpec& c, const Budgets& budgets) {
    const uint64_t count = trunc_x(x);
    std::vector<uint64_t> values(count);
    for (uint64_t n = 1; n <= count; ++n) {
        const CertifiedFloor f = floor_pow(n, c, budgets);
        if (!f.value.fits_ulong_p())
            throw BudgetError("floor(n^c) does not fit in 64 bits at n = " + std::to_string(n));
        values[static_cast<size_t>(n - 1)] = f.value.get_ui();
    }
    return values;
}

int64_t count_ap_in(std::span<const uint64_t> values, int64_t a, uint64_t q) {
    if (q == 0) throw ParseError("modulus q must be >= 1");
    int64_t r = a % static_cast<int64_t>(q);
    if (r < 0) r += static_cast<int64_t>(q);
    int64_t count = 0;
    for (uint64_t v : values)
        if (v % q == static_cast<uint64_t>(r)) ++count;
    return count;
}

int64_t coprime_tuples_bruteforce(const TupleSpec& spec, const Budgets& budgets) {
    const uint64_t X = trunc_x(spec.x);
    const int r = spec.r();
    if (std::pow(static_cast<long double>(X), r) > static_cast<long double>(budgets.max_bruteforce))
        throw BudgetError("brute-force size guard exceeded");

    std::vector<std::vector<uint64_t>> values;
    for (const OrderSpec& c : spec.orders) values.push_back(ref::floor_sequence(spec.x, c, budgets));

    // Odometer over all r-tuples of indices; no shortcuts.
    std::vector<uint64_t> idx(static_cast<size_t>(r), 0);
    int64_t count = 0;
    while (true) {
        uint64_t g = 0;
        for (int j = 0; j < r; ++j)
            g = std::gcd(g, values[static_cast<size_t>(j)][static_cast<size_t>(idx[static_cast<size_t>(j)])]);
        if (g == 1) ++count;
        int j = r - 1;
        while (j >= 0 && ++idx[static_cast<size_t>(j)] == X) idx[static_cast<size_t>(j--)] = 0;
        if (j < 0) break;
    }
    return count;
}

int64_t coprime_pairs_mobius(double x, const OrderSpec& c, const Factorizer& f,
                             const Budgets& budgets) {
    const std::vector<uint64_t> values = ref::floor_sequence(x, c, budgets);
    std::unordered_map<uint64_t, std::pair<int64_t, int>> counts; // d -> (count, mu)
    for (uint64_t v : values) {
        const Factorization fa = f.factor(v);
        for_each_squarefree_divisor(fa, [&counts](uint64_t d, int mu) {
            auto& e = counts[d];
            ++e.first;
            e.second = mu;
        });
    }
    __int128_t total = 0;
    for (const auto& [d, e] : counts) total += static_cast<__int128_t>(e.second) * e.first * e.first;
    return static_cast<int64_t>(total);
}

std::complex<double> weyl_sum(const DyadicBlock& block, const PhaseParams& p, double eps,
                              bool negate_phase, const Budgets& budgets) {
    if (p.h == 0 || p.q == 0) throw ParseError("h and q must be >= 1");
    if (block.terms() > budgets.max_terms) throw BudgetError("exponential sum too long");
    std::complex<double> sum{0.0, 0.0};
    if (block.terms() == 0) return sum;
    const double sign = negate_phase ? -1.0 : 1.0;
    for (uint64_t n = block.first(); n <= block.last(); ++n) {
        const double ang =
            sign * 2.0 * std::numbers::pi * frac_part_scaled(n, p.h, p.q, p.c, eps, budgets);
        sum += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return sum;
}

int64_t dd_coprime_count(double x, const OrderSpec& c, const Budgets& budgets) {
    const std::vector<uint64_t> values = ref::floor_sequence(x, c, budgets);
    int64_t count = 0;
    for (uint64_t n = 1; n <= values.size(); ++n)
        if (std::gcd(n, values[static_cast<size_t>(n - 1)]) == 1) ++count;
    return count;
}

uint64_t tau_sum(double x, const OrderSpec& c, const Factorizer& f, const Budgets& budgets) {
    const std::vector<uint64_t> values = ref::floor_sequence(x, c, budgets);
    uint64_t total = 0;
    for (uint64_t v : values) total += f.factor(v).tau();
    return total;
}

} // namespace pst::ref
