#pragma once
#include <cstdint>
#include <mpfr.h>

namespace pst {

// Resource limits. Defaults are sized for desk-scale experiments; everything
// here is overridable from the CLI.
struct Budgets {
    mpfr_prec_t start_bits = 64;            // first precision tried
    mpfr_prec_t max_bits = 16384;           // escalation cap
    uint64_t max_bruteforce = 100'000'000;  // gcd evaluations allowed in brute-force counts
    uint64_t trial_limit = 1'000'000;       // trial division by primes below this bound
    uint64_t rho_budget = 10'000'000;       // Brent-rho iterations allowed per value
    uint64_t max_terms = 100'000'000;       // exponential-sum length cap
};

} // namespace pst
