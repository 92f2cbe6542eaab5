#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "pst/budgets.hpp"
#include "pst/interval.hpp"
#include "pst/order.hpp"

namespace pst {

// floor(n^c) together with the certificate that pinned it down: either a
// proven perfect-power identity (exact, bits = 0) or an enclosing interval
// whose endpoints share a floor, computed at `bits` of working precision.
struct CertifiedFloor {
    uint64_t n = 0;
    mpz_class value;
    mpfr_prec_t bits = 0;
    bool exact = false;
};

// When n^c is an integer, returns it; otherwise empty. For a rational order
// p/s in lowest terms this happens exactly when n is a perfect s-th power;
// for a sqrt order only at n = 1.
std::optional<mpz_class> is_exact_power(uint64_t n, const OrderSpec& c);

// Enclosure of n^c at the given precision (exposed for reuse and for
// recertification in tests).
RealInterval pow_enclosure(uint64_t n, const OrderSpec& c, mpfr_prec_t prec);

CertifiedFloor floor_pow(uint64_t n, const OrderSpec& c, const Budgets& budgets = {});

// Fractional part of h * n^c / q within absolute error eps, in [0, 1).
// Exact-integer inputs short-circuit to modular arithmetic; otherwise the
// enclosure must both be narrower than eps and avoid straddling an integer
// before a value is returned.
double frac_part_scaled(uint64_t n, uint64_t h, uint64_t q, const OrderSpec& c,
                        double eps, const Budgets& budgets = {});

// floor(1^c) .. floor(floor(x)^c) as machine words; BudgetError if a value
// does not fit in 64 bits. OpenMP across n; every slot is certified
// independently, so the result is identical for any worker count.
std::vector<uint64_t> floor_sequence(double x, const OrderSpec& c, const Budgets& budgets = {});

// floor(x) for the real cutoffs used throughout; validates 1 <= x < 2^62.
uint64_t trunc_x(double x);

} // namespace pst
