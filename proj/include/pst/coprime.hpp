#pragma once
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pst/budgets.hpp"
#include "pst/factor.hpp"
#include "pst/order.hpp"

namespace pst {

// An r-tuple counting problem: how many (n_1, ..., n_r), all n_i <= x, have
// gcd(floor(n_1^{c_1}), ..., floor(n_r^{c_r})) = 1. Orders are sorted on
// construction so the count is manifestly permutation-invariant.
struct TupleSpec {
    std::vector<OrderSpec> orders;
    double x = 1;

    TupleSpec(std::vector<OrderSpec> orders_in, double x_in);
    int r() const { return static_cast<int>(orders.size()); }
};

// Aggregated divisor counts of one floor sequence, restricted to squarefree
// divisors: cnt[d] = #{n : d | floor(n^c)}, with the Mobius value of d
// stored alongside. cnt[1] is always the sequence length.
struct LedgerEntry {
    int64_t count = 0;
    int mu = 0;
};
struct MobiusLedger {
    std::unordered_map<uint64_t, LedgerEntry> cnt;
};

MobiusLedger build_mobius_ledger(std::span<const uint64_t> values,
                                 const Factorizer& f = default_factorizer());

// Direct gcd enumeration. Guarded: floor(x)^r must stay within
// budgets.max_bruteforce.
int64_t coprime_tuples_bruteforce(const TupleSpec& spec, const Budgets& budgets = {});
int64_t coprime_pairs_bruteforce(double x, const OrderSpec& c, const Budgets& budgets = {});

// Inclusion-exclusion over squarefree moduli:
//   sum over squarefree d of mu(d) * prod_i cnt_i[d].
// Exactly equal to the brute-force count; the two routes are kept separate
// on purpose so they can check each other.
int64_t coprime_tuples_mobius(const TupleSpec& spec, const Factorizer& f = default_factorizer(),
                              const Budgets& budgets = {});
int64_t coprime_pairs_mobius(double x, const OrderSpec& c,
                             const Factorizer& f = default_factorizer(),
                             const Budgets& budgets = {});

// Riemann zeta at integer r >= 2, certified to >= 12 significant digits.
double zeta(int r);

// Leading-order prediction x^r / zeta(r) for the r-tuple count.
double main_term(double x, int r);

} // namespace pst
