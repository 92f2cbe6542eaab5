#include "pst/psseq.hpp"

#include <cmath>
#include <numeric>

#include "pst/errors.hpp"
#include "pst/parallel.hpp"

namespace pst {

namespace {

uint64_t reduce_mod(int64_t a, uint64_t q) {
    int64_t r = a % static_cast<int64_t>(q);
    if (r < 0) r += static_cast<int64_t>(q);
    return static_cast<uint64_t>(r);
}

} // namespace

int64_t count_ap_in(std::span<const uint64_t> values, int64_t a, uint64_t q) {
    if (q == 0) throw ParseError("modulus q must be >= 1");
    const uint64_t ar = reduce_mod(a, q);
    int64_t count = 0;
    const int64_t n = static_cast<int64_t>(values.size());
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (int64_t i = 0; i < n; ++i)
        if (values[static_cast<size_t>(i)] % q == ar) ++count;
    return count;
}

int64_t count_ap(double x, int64_t a, uint64_t q, const OrderSpec& c, const Budgets& budgets) {
    const std::vector<uint64_t> values = floor_sequence(x, c, budgets);
    return count_ap_in(values, a, q);
}

int64_t ResidueProfile::count(uint64_t a) const {
    const uint64_t ar = a % q;
    if (!sparse) return dense[static_cast<size_t>(ar)];
    const auto it = sparse_counts.find(ar);
    return it == sparse_counts.end() ? 0 : it->second;
}

int64_t ResidueProfile::total() const {
    if (!sparse) return std::accumulate(dense.begin(), dense.end(), int64_t{0});
    int64_t t = 0;
    for (const auto& [a, n] : sparse_counts) t += n;
    return t;
}

ResidueProfile residue_profile_in(std::span<const uint64_t> values, double x, uint64_t q) {
    if (q == 0) throw ParseError("modulus q must be >= 1");
    ResidueProfile profile;
    profile.x = x;
    profile.q = q;
    profile.sparse = q > values.size();
    if (!profile.sparse) {
        profile.dense.assign(static_cast<size_t>(q), 0);
        for (uint64_t v : values) ++profile.dense[static_cast<size_t>(v % q)];
    } else {
        // At most values.size() classes are hit; never materialise q slots.
        for (uint64_t v : values) ++profile.sparse_counts[v % q];
    }
    return profile;
}

ResidueProfile residue_profile(double x, uint64_t q, const OrderSpec& c, const Budgets& budgets) {
    const std::vector<uint64_t> values = floor_sequence(x, c, budgets);
    return residue_profile_in(values, x, q);
}

int64_t divisor_count(double x, uint64_t d, const OrderSpec& c, const Budgets& budgets) {
    if (d == 0) throw ParseError("divisor d must be >= 1");
    return count_ap(x, 0, d, c, budgets);
}

ApErrorReport ap_error_report(double x, int64_t a, uint64_t q, const OrderSpec& c, int k,
                              const Budgets& budgets) {
    if (k < 1 || k > 64) throw ParseError("k must be in [1, 64]");
    if (q == 0) throw ParseError("modulus q must be >= 1");
    const double cd = c.approx();
    if (static_cast<long double>(q) >
        std::pow(static_cast<long double>(x), static_cast<long double>(cd)) * (1.0L + 1e-9L))
        throw ParseError("q out of range: q must be <= x^c");

    ApErrorReport report;
    report.k = k;
    const int64_t count = count_ap(x, a, q, c, budgets);
    report.observed = std::abs(static_cast<double>(count) - x / static_cast<double>(q));
    const long double denom = std::exp2l(static_cast<long double>(k)) - 1.0L; // 2^k - 1
    const long double ex = 1.0L - (k - static_cast<long double>(cd)) / denom;
    const long double eq = -1.0L / denom;
    report.theoretical = static_cast<double>(std::pow(static_cast<long double>(x), ex) *
                                             std::pow(static_cast<long double>(q), eq));
    return report;
}

int64_t dd_coprime_count(double x, const OrderSpec& c, const Budgets& budgets) {
    const std::vector<uint64_t> values = floor_sequence(x, c, budgets);
    int64_t count = 0;
    const int64_t n = static_cast<int64_t>(values.size());
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (int64_t i = 0; i < n; ++i)
        if (std::gcd(static_cast<uint64_t>(i) + 1, values[static_cast<size_t>(i)]) == 1) ++count;
    return count;
}

uint64_t tau_sum(double x, const OrderSpec& c, const Factorizer& f, const Budgets& budgets) {
    const std::vector<uint64_t> values = floor_sequence(x, c, budgets);
    uint64_t total = 0;
    ErrorCollector errors;
    const int64_t n = static_cast<int64_t>(values.size());
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : total)
    for (int64_t i = 0; i < n; ++i) {
        errors.run([&, i] { total += f.factor(values[static_cast<size_t>(i)]).tau(); });
    }
    errors.rethrow();
    return total;
}

} // namespace pst
