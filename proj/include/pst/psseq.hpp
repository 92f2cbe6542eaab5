#pragma once
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pst/budgets.hpp"
#include "pst/factor.hpp"
#include "pst/order.hpp"
#include "pst/realpow.hpp"

namespace pst {

// How many n <= x have floor(n^c) ≡ a (mod q). The result only depends on
// a mod q.
int64_t count_ap(double x, int64_t a, uint64_t q, const OrderSpec& c, const Budgets& budgets = {});
// Same count over a precomputed floor sequence (n = 1..values.size()).
int64_t count_ap_in(std::span<const uint64_t> values, int64_t a, uint64_t q);

// Counts for every residue class mod q. Dense vector when q <= floor(x);
// otherwise a sorted sparse map holding only the (at most floor(x)) classes
// that are hit.
struct ResidueProfile {
    double x = 1;
    uint64_t q = 1;
    bool sparse = false;
    std::vector<int64_t> dense;
    std::map<uint64_t, int64_t> sparse_counts;

    int64_t count(uint64_t a) const;
    int64_t total() const; // always floor(x): the classes partition 1..floor(x)
};

ResidueProfile residue_profile(double x, uint64_t q, const OrderSpec& c, const Budgets& budgets = {});
ResidueProfile residue_profile_in(std::span<const uint64_t> values, double x, uint64_t q);

// How many n <= x have d | floor(n^c).
int64_t divisor_count(double x, uint64_t d, const OrderSpec& c, const Budgets& budgets = {});

// Observed vs predicted size of the error term in the residue count.
struct ApErrorReport {
    double observed = 0;    // |count - x/q|
    double theoretical = 0; // x^{1-(k-c)/(2^k-1)} * q^{-1/(2^k-1)}; k = 1 gives x^c/q
    int k = 1;
};

ApErrorReport ap_error_report(double x, int64_t a, uint64_t q, const OrderSpec& c, int k,
                              const Budgets& budgets = {});

// How many n <= x have gcd(n, floor(n^c)) = 1 (the two-sequence diagnostic
// counter; its density tends to 1/zeta(2)).
int64_t dd_coprime_count(double x, const OrderSpec& c, const Budgets& budgets = {});

// Sum of the divisor function over floor(n^c), n <= x.
uint64_t tau_sum(double x, const OrderSpec& c, const Factorizer& f = default_factorizer(),
                 const Budgets& budgets = {});

} // namespace pst
