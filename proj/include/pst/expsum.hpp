#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "pst/budgets.hpp"
#include "pst/order.hpp"

namespace pst {

// A dyadic summation range (m, m2] with 1 <= m <= m2 <= 2m.
struct DyadicBlock {
    double m = 1;
    double m2 = 2;

    DyadicBlock(double m_in, double m2_in);
    // Block number k of the dyadic decomposition of [1, x]:
    // (min(2^k, x), min(2^{k+1}, x)].
    static DyadicBlock indexed(int k, double x);

    uint64_t first() const; // smallest integer in the block
    uint64_t last() const;  // largest integer in the block
    uint64_t terms() const;
};

// Phase h * n^c / q of the oscillating sums.
struct PhaseParams {
    uint64_t h = 1;
    uint64_t q = 1;
    OrderSpec c;
};

// Sum of e(h n^c / q) over integers n in the block. Every phase is certified
// to absolute error eps, so |result - exact| <= 2*pi*eps*terms (plus double
// rounding). negate_phase flips the sign of the phase; the result is then
// the complex conjugate. Deterministic for any worker count (fixed-chunk
// reduction).
std::complex<double> weyl_sum(const DyadicBlock& block, const PhaseParams& p, double eps = 1e-12,
                              bool negate_phase = false, const Budgets& budgets = {});

// Size parameter F = h q^{-1} M^c of the phase on a block starting at M.
double phase_scale(const PhaseParams& p, double M);

// k-th derivative test bound F^{1/(2^k-2)} N^{1-k/(2^k-2)} + N/F, without
// its implicit constant.
double vdc_bound(double F, double N, int k);

// Falling factorial c(c-1)...(c-r+1); controls the size of the r-th
// derivative of n^c.
double falling_product(const OrderSpec& c, int r);

// Discrepancy inequality sides for a finite sequence of fractional parts.
struct EtBoundInput {
    std::vector<double> fracs; // x_n in [0, 1)
    double alpha = 0;
    double beta = 1;  // counting interval [alpha, beta); beta = 1 means the full circle
    double H = 1;     // harmonic cutoff
};
struct EtSides {
    double lhs = 0; // |#{x_n in [alpha, beta)} - (beta - alpha) N|
    double rhs = 0; // N/H + sum_{h <= H} (1/H + min(beta - alpha, 1/h)) |sum_n e(h x_n)|
};

EtSides et_sides(const EtBoundInput& in);

// Fractional parts {h n^c / q} for n = 1..N, each certified to eps.
std::vector<double> phase_fracs(uint64_t N, const PhaseParams& p, double eps = 1e-12,
                                const Budgets& budgets = {});

} // namespace pst
