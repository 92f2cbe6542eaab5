#include "pst/expsum.hpp"

#include <cmath>
#include <numbers>

#include "pst/errors.hpp"
#include "pst/parallel.hpp"
#include "pst/realpow.hpp"

namespace pst {

namespace {

constexpr uint64_t kChunk = 4096; // deterministic-reduction chunk size
constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

DyadicBlock::DyadicBlock(double m_in, double m2_in) : m(m_in), m2(m2_in) {
    if (!(m >= 1) || !(m2 >= m) || !(m2 <= 2 * m))
        throw ParseError("dyadic block needs 1 <= M <= M2 <= 2M");
}

DyadicBlock DyadicBlock::indexed(int k, double x) {
    if (k < 0) throw ParseError("block index must be >= 0");
    trunc_x(x);
    const double lo = std::min(std::exp2(k), x);
    const double hi = std::min(std::exp2(k + 1), x);
    return DyadicBlock(lo, hi);
}

uint64_t DyadicBlock::first() const { return trunc_x(m) + 1; }
uint64_t DyadicBlock::last() const { return trunc_x(m2); }
uint64_t DyadicBlock::terms() const {
    const uint64_t a = first(), b = last();
    return b >= a ? b - a + 1 : 0;
}

std::complex<double> weyl_sum(const DyadicBlock& block, const PhaseParams& p, double eps,
                              bool negate_phase, const Budgets& budgets) {
    if (p.h == 0 || p.q == 0) throw ParseError("h and q must be >= 1");
    if (block.terms() > budgets.max_terms) throw BudgetError("exponential sum too long");
    if (block.terms() == 0) return {0.0, 0.0};
    const double sign = negate_phase ? -1.0 : 1.0;
    return chunked_reduce<std::complex<double>>(
        block.first(), block.last() + 1, kChunk, [&](uint64_t a, uint64_t b) {
            std::complex<double> partial{0.0, 0.0};
            for (uint64_t n = a; n < b; ++n) {
                const double frac = frac_part_scaled(n, p.h, p.q, p.c, eps, budgets);
                const double ang = sign * kTwoPi * frac;
                partial += std::complex<double>(std::cos(ang), std::sin(ang));
            }
            return partial;
        });
}

double phase_scale(const PhaseParams& p, double M) {
    if (p.h == 0 || p.q == 0) throw ParseError("h and q must be >= 1");
    if (!(M >= 1)) throw ParseError("M must be >= 1");
    return static_cast<double>(static_cast<long double>(p.h) *
                               std::pow(static_cast<long double>(M),
                                        static_cast<long double>(p.c.approx())) /
                               static_cast<long double>(p.q));
}

double vdc_bound(double F, double N, int k) {
    if (!(F > 0) || !(N >= 1)) throw ParseError("derivative bound needs F > 0 and N >= 1");
    if (k < 2 || k > 62) throw ParseError("derivative order k must be in [2, 62]");
    const double D = std::exp2(k) - 2.0; // 2^k - 2
    return std::pow(F, 1.0 / D) * std::pow(N, 1.0 - static_cast<double>(k) / D) + N / F;
}

double falling_product(const OrderSpec& c, int r) {
    if (r < 1) throw ParseError("falling product needs r >= 1");
    const double cd = c.approx();
    double prod = 1;
    for (int i = 0; i < r; ++i) prod *= cd - i;
    return prod;
}

EtSides et_sides(const EtBoundInput& in) {
    if (!(in.alpha >= 0) || !(in.beta >= in.alpha) || !(in.beta <= 1))
        throw ParseError("interval must satisfy 0 <= alpha <= beta <= 1");
    if (!(in.H > 0)) throw ParseError("harmonic cutoff H must be positive");
    for (double f : in.fracs)
        if (!(f >= 0) || !(f < 1)) throw ParseError("fractional parts must lie in [0, 1)");
    const uint64_t N = in.fracs.size();

    EtSides sides;
    int64_t hits = 0;
    const int64_t n = static_cast<int64_t>(N);
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (int64_t i = 0; i < n; ++i) {
        const double f = in.fracs[static_cast<size_t>(i)];
        if (f >= in.alpha && f < in.beta) ++hits;
    }
    sides.lhs = std::abs(static_cast<double>(hits) -
                         (in.beta - in.alpha) * static_cast<double>(N));

    sides.rhs = static_cast<double>(N) / in.H;
    const uint64_t hmax = static_cast<uint64_t>(std::floor(in.H));
    for (uint64_t h = 1; h <= hmax; ++h) {
        // e(h x_n) depends only on the fractional part of x_n.
        const std::complex<double> s = chunked_reduce<std::complex<double>>(
            0, N, kChunk, [&](uint64_t a, uint64_t b) {
                std::complex<double> partial{0.0, 0.0};
                for (uint64_t i = a; i < b; ++i) {
                    const double ang = kTwoPi * static_cast<double>(h) * in.fracs[i];
                    partial += std::complex<double>(std::cos(ang), std::sin(ang));
                }
                return partial;
            });
        const double weight = 1.0 / in.H + std::min(in.beta - in.alpha, 1.0 / static_cast<double>(h));
        sides.rhs += weight * std::abs(s);
    }
    return sides;
}

std::vector<double> phase_fracs(uint64_t N, const PhaseParams& p, double eps,
                                const Budgets& budgets) {
    if (p.h == 0 || p.q == 0) throw ParseError("h and q must be >= 1");
    if (N > budgets.max_terms) throw BudgetError("phase sequence too long");
    std::vector<double> fracs(N);
    ErrorCollector errors;
#pragma omp parallel for schedule(dynamic, 1024)
    for (int64_t i = 0; i < static_cast<int64_t>(N); ++i) {
        errors.run([&, i] {
            fracs[static_cast<size_t>(i)] =
                frac_part_scaled(static_cast<uint64_t>(i) + 1, p.h, p.q, p.c, eps, budgets);
        });
    }
    errors.rethrow();
    return fracs;
}

} // namespace pst
