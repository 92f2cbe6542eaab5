#pragma once
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "pst/budgets.hpp"

namespace pst {

bool is_prime_u64(uint64_t n); // deterministic Miller-Rabin, full 64-bit range
std::vector<uint32_t> sieve_primes(uint32_t limit); // primes < limit

struct Factorization {
    std::vector<std::pair<uint64_t, int>> pe; // distinct primes ascending, with exponents
    int omega() const { return static_cast<int>(pe.size()); }
    uint64_t tau() const; // number of divisors
    bool squarefree() const;
};

// Shared factorization engine: smallest-prime-factor table for small values,
// trial division by sieved primes above that, then deterministic Brent rho
// (fixed polynomial offsets, fixed start point) with an iteration budget.
// Immutable after construction, safe to share across threads.
class Factorizer {
public:
    explicit Factorizer(const Budgets& budgets = {});
    Factorization factor(uint64_t v) const; // v >= 1; BudgetError when rho runs out
private:
    uint64_t trial_limit_;
    uint64_t rho_budget_;
    std::vector<uint32_t> spf_;    // smallest prime factor for v < spf_.size()
    std::vector<uint32_t> primes_; // primes below trial_limit_
};

// Process-wide engine with default budgets (tables built once).
const Factorizer& default_factorizer();

// Enumerates the squarefree divisors of the factored value together with
// their Mobius values: fn(d, mu) with mu = (-1)^{number of primes in d}.
template <class F>
void for_each_squarefree_divisor(const Factorization& f, F&& fn) {
    const int w = f.omega();
    for (uint32_t mask = 0; mask < (1u << w); ++mask) {
        uint64_t d = 1;
        for (int i = 0; i < w; ++i)
            if (mask & (1u << i)) d *= f.pe[static_cast<size_t>(i)].first;
        fn(d, (std::popcount(mask) & 1u) ? -1 : +1);
    }
}

} // namespace pst
