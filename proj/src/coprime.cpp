#include "pst/coprime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pst/errors.hpp"
#include "pst/parallel.hpp"
#include "pst/realpow.hpp"

namespace pst {

namespace {

using i128 = __int128_t;

i128 ipow_i128(int64_t base, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// floor(x)^r as a guard value; long double is plenty for a guard.
long double xr_estimate(uint64_t X, int r) {
    return std::pow(static_cast<long double>(X), static_cast<long double>(r));
}

// Distinct orders with multiplicities; spec.orders is already sorted.
struct OrderGroup {
    OrderSpec order;
    int mult = 1;
};

std::vector<OrderGroup> group_orders(const TupleSpec& spec) {
    std::vector<OrderGroup> groups;
    for (const OrderSpec& c : spec.orders) {
        if (!groups.empty() && groups.back().order == c)
            ++groups.back().mult;
        else
            groups.push_back({c, 1});
    }
    return groups;
}

} // namespace

TupleSpec::TupleSpec(std::vector<OrderSpec> orders_in, double x_in)
    : orders(std::move(orders_in)), x(x_in) {
    if (orders.size() < 2) throw ParseError("tuple needs at least two orders");
    trunc_x(x); // validates the cutoff
    std::sort(orders.begin(), orders.end(),
              [](const OrderSpec& a, const OrderSpec& b) { return a.cmp(b) < 0; });
}

MobiusLedger build_mobius_ledger(std::span<const uint64_t> values, const Factorizer& f) {
    MobiusLedger ledger;
    ErrorCollector errors;
    const int64_t n = static_cast<int64_t>(values.size());
#pragma omp parallel
    {
        MobiusLedger local;
#pragma omp for schedule(dynamic, 256) nowait
        for (int64_t i = 0; i < n; ++i) {
            errors.run([&] {
                const Factorization fa = f.factor(values[static_cast<size_t>(i)]);
                for_each_squarefree_divisor(fa, [&local](uint64_t d, int mu) {
                    LedgerEntry& e = local.cnt[d];
                    ++e.count;
                    e.mu = mu;
                });
            });
        }
#pragma omp critical(pst_ledger_merge)
        {
            for (const auto& [d, e] : local.cnt) {
                LedgerEntry& dst = ledger.cnt[d];
                dst.count += e.count;
                dst.mu = e.mu;
            }
        }
    }
    errors.rethrow();
    return ledger;
}

int64_t coprime_tuples_mobius(const TupleSpec& spec, const Factorizer& f, const Budgets& budgets) {
    const uint64_t X = trunc_x(spec.x);
    const int r = spec.r();
    if (xr_estimate(X, r) > 9.0e18L)
        throw BudgetError("tuple count may overflow a signed 64-bit result");

    const std::vector<OrderGroup> groups = group_orders(spec);
    std::vector<MobiusLedger> ledgers;
    ledgers.reserve(groups.size());
    for (const OrderGroup& g : groups) {
        const std::vector<uint64_t> values = floor_sequence(spec.x, g.order, budgets);
        ledgers.push_back(build_mobius_ledger(values, f));
    }

    // Only moduli dividing at least one value in every sequence contribute;
    // iterate the smallest ledger and probe the rest.
    size_t lead = 0;
    for (size_t i = 1; i < ledgers.size(); ++i)
        if (ledgers[i].cnt.size() < ledgers[lead].cnt.size()) lead = i;

    i128 total = 0;
    for (const auto& [d, e0] : ledgers[lead].cnt) {
        i128 term = e0.mu;
        bool present = true;
        for (size_t gi = 0; gi < groups.size() && present; ++gi) {
            const LedgerEntry* e;
            if (gi == lead) {
                e = &e0;
            } else {
                const auto it = ledgers[gi].cnt.find(d);
                if (it == ledgers[gi].cnt.end()) {
                    present = false;
                    break;
                }
                e = &it->second;
            }
            term *= ipow_i128(e->count, groups[gi].mult);
        }
        if (present) total += term;
    }
    return static_cast<int64_t>(total);
}

int64_t coprime_pairs_mobius(double x, const OrderSpec& c, const Factorizer& f,
                             const Budgets& budgets) {
    return coprime_tuples_mobius(TupleSpec({c, c}, x), f, budgets);
}

int64_t coprime_tuples_bruteforce(const TupleSpec& spec, const Budgets& budgets) {
    const uint64_t X = trunc_x(spec.x);
    const int r = spec.r();
    if (xr_estimate(X, r) > static_cast<long double>(budgets.max_bruteforce))
        throw BudgetError("brute-force size guard exceeded");

    const std::vector<OrderGroup> groups = group_orders(spec);
    std::vector<std::vector<uint64_t>> values;
    values.reserve(groups.size());
    for (const OrderGroup& g : groups) values.push_back(floor_sequence(spec.x, g.order, budgets));
    // One sequence pointer per tuple slot.
    std::vector<const std::vector<uint64_t>*> dims;
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (int j = 0; j < groups[gi].mult; ++j) dims.push_back(&values[gi]);

    // Depth-first over the remaining slots. Once the running gcd hits 1 the
    // rest of the slots are unconstrained and contribute X^{r-level}.
    auto count_from = [&](auto&& self, int level, uint64_t g) -> int64_t {
        if (g == 1) {
            int64_t block = 1;
            for (int j = level; j < r; ++j) block *= static_cast<int64_t>(X);
            return block;
        }
        if (level == r) return 0;
        const std::vector<uint64_t>& vs = *dims[static_cast<size_t>(level)];
        int64_t sum = 0;
        for (uint64_t v : vs) sum += self(self, level + 1, std::gcd(g, v));
        return sum;
    };

    const std::vector<uint64_t>& first = *dims[0];
    int64_t total = 0;
    const int64_t n = static_cast<int64_t>(first.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
    for (int64_t i = 0; i < n; ++i)
        total += count_from(count_from, 1, first[static_cast<size_t>(i)]);
    return total;
}

int64_t coprime_pairs_bruteforce(double x, const OrderSpec& c, const Budgets& budgets) {
    return coprime_tuples_bruteforce(TupleSpec({c, c}, x), budgets);
}

double zeta(int r) {
    if (r < 2) throw ParseError("zeta is only evaluated at integer r >= 2");
    if (r == 2) return std::numbers::pi * std::numbers::pi / 6.0;
    // Partial sum plus integral tail enclosure
    //   sum_{n>N} n^{-r} in [(N+1)^{1-r}, N^{1-r}] / (r-1);
    // N is the first power of two whose enclosure is narrower than 1e-13.
    uint64_t N = 16;
    auto tail_width = [r](uint64_t n) {
        return (std::pow(static_cast<long double>(n), 1 - r) -
                std::pow(static_cast<long double>(n + 1), 1 - r)) /
               (r - 1);
    };
    while (tail_width(N) > 1e-13L) N *= 2;
    long double partial = 0;
    for (uint64_t n = N; n >= 1; --n) // ascending magnitude
        partial += std::pow(static_cast<long double>(n), -r);
    const long double tail_lo = std::pow(static_cast<long double>(N + 1), 1 - r) / (r - 1);
    const long double tail_hi = std::pow(static_cast<long double>(N), 1 - r) / (r - 1);
    return static_cast<double>(partial + (tail_lo + tail_hi) / 2);
}

double main_term(double x, int r) {
    if (r < 2) throw ParseError("tuple rank r must be >= 2");
    trunc_x(x);
    return static_cast<double>(std::pow(static_cast<long double>(x), r) /
                               static_cast<long double>(zeta(r)));
}

} // namespace pst
