#pragma once
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pst/budgets.hpp"
#include "pst/coprime.hpp"
#include "pst/expsum.hpp"
#include "pst/order.hpp"

// Plain serial implementations of the parallel kernels. These exist so the
// OpenMP versions have something simple to be checked against (tests assert
// agreement; ps-bench times the two side by side). Keep them boring: no
// pruning tricks, no chunking, straight loops.
namespace pst::ref {

std::vector<uint64_t> floor_sequence(double x, const OrderSpec& c, const Budgets& budgets = {});
int64_t count_ap_in(std::span<const uint64_t> values, int64_t a, uint64_t q);
int64_t coprime_tuples_bruteforce(const TupleSpec& spec, const Budgets& budgets = {});
int64_t coprime_pairs_mobius(double x, const OrderSpec& c,
                             const Factorizer& f = default_factorizer(),
                             const Budgets& budgets = {});
std::complex<double> weyl_sum(const DyadicBlock& block, const PhaseParams& p, double eps = 1e-12,
                              bool negate_phase = false, const Budgets& budgets = {});
int64_t dd_coprime_count(double x, const OrderSpec& c, const Budgets& budgets = {});
uint64_t tau_sum(double x, const OrderSpec& c, const Factorizer& f = default_factorizer(),
                 const Budgets& budgets = {});

} // namespace pst::ref
