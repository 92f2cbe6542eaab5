// Acceptance gate: one check per shipping criterion, each printing a single
// PASS/FAIL line with the measured quantity. The process exit code is the
// number of failed criteria, so ctest shows the whole picture in one run.
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pst/analysis.hpp"
#include "pst/coprime.hpp"
#include "pst/exponent.hpp"
#include "pst/expsum.hpp"
#include "pst/psseq.hpp"
#include "pst/realpow.hpp"

using namespace pst;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
}

void run(int criterion, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        const auto [ok, what] = fn();
        report(criterion, ok, what);
    } catch (const std::exception& e) {
        report(criterion, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- 1: the two counting routes are the same function ---------------------

std::pair<bool, std::string> routes_identical() {
    const std::vector<OrderSpec> orders = {
        OrderSpec::parse("1"), OrderSpec::parse("3/2"), OrderSpec::parse("sqrt:2"),
        OrderSpec::parse("5/2")};
    int checked = 0;
    for (double x : {50.0, 200.0, 1000.0, 2000.0}) {
        for (const OrderSpec& c : orders) {
            const TupleSpec spec({c, c}, x);
            const int64_t a = coprime_tuples_mobius(spec);
            const int64_t b = coprime_pairs_bruteforce(x, c);
            if (a != b)
                return {false, fmt("pairs x=%.0f c=%s: mobius %" PRId64 " != brute %" PRId64, x,
                                   c.str().c_str(), a, b)};
            ++checked;
        }
    }
    const TupleSpec triple(
        {OrderSpec::parse("1"), OrderSpec::parse("3/2"), OrderSpec::parse("3/2")}, 300);
    const int64_t a = coprime_tuples_mobius(triple);
    const int64_t b = coprime_tuples_bruteforce(triple);
    if (a != b)
        return {false, fmt("triple x=300: mobius %" PRId64 " != brute %" PRId64, a, b)};
    return {true, fmt("mobius == brute on %d pair grids and one triple", checked + 1)};
}

// ---- 2: integer orders reduce to classical coprimality --------------------

std::pair<bool, std::string> integer_orders_classical() {
    // Classical side: pair count = 2*sum phi - 1, accumulated incrementally
    // by a plain totient sieve. Library side: the inclusion-exclusion route,
    // for every cutoff up to 2000.
    const uint64_t max_x = 2000;
    std::vector<uint64_t> phi(max_x + 1);
    std::iota(phi.begin(), phi.end(), uint64_t{0});
    for (uint64_t p = 2; p <= max_x; ++p) {
        if (phi[p] != p) continue;
        for (uint64_t j = p; j <= max_x; j += p) phi[j] -= phi[j] / p;
    }

    for (const char* text : {"2", "3"}) {
        const OrderSpec c = OrderSpec::parse(text);
        int64_t phi_sum = 0;
        for (uint64_t x = 1; x <= max_x; ++x) {
            phi_sum += static_cast<int64_t>(phi[x]);
            const int64_t classical = 2 * phi_sum - 1;
            const int64_t counted = coprime_pairs_mobius(static_cast<double>(x), c);
            if (counted != classical)
                return {false, fmt("c=%s x=%" PRIu64 ": mobius %" PRId64 " != classical %" PRId64,
                                   text, x, counted, classical)};
        }
        // And the direct route once at the top, for good measure.
        if (coprime_pairs_bruteforce(static_cast<double>(max_x), c) != 2 * phi_sum - 1)
            return {false, fmt("c=%s x=%" PRIu64 ": brute route disagrees", text, max_x)};
    }
    return {true, "all 2000 cutoffs match the totient sieve for c = 2 and c = 3"};
}

// ---- 3: order-one error stays O(x log x) with a small constant ------------

std::pair<bool, std::string> order_one_error_constant() {
    const OrderSpec one = OrderSpec::parse("1");
    double worst = 0;
    for (int j = 8; j <= 17; ++j) {
        const double x = std::exp2(j);
        const int64_t s = coprime_pairs_mobius(x, one);
        const double err = std::abs(static_cast<double>(s) - x * x / zeta(2));
        worst = std::max(worst, err / (x * std::log(x)));
    }
    return {worst <= 5.0, fmt("max |S - x^2/zeta(2)| / (x ln x) = %.4f (need <= 5)", worst)};
}

// ---- 4: pair-count error slope stays under the proven exponent ------------

std::pair<bool, std::string> pair_error_slope() {
    const OrderSpec c = OrderSpec::parse("3/2");
    const auto grid = geometric_grid(256, 16384, 2);
    const ErrorCurve curve = error_curve_pairs(grid, c);
    const SlopeFit fit = fit_slope(curve);
    // Proven: error << x^{2 - (k-c)/(2^k-1)} (log factors dropped), k = 3.
    const double bound = 2.0 - (3.0 - 1.5) / 7.0 + 0.15;
    return {fit.slope <= bound,
            fmt("fitted slope %.4f over 2^8..2^14 (need <= %.4f)", fit.slope, bound)};
}

// ---- 5: residue classes partition 1..floor(x) ------------------------------

std::pair<bool, std::string> partition_identity() {
    const OrderSpec c32 = OrderSpec::parse("3/2");
    const OrderSpec s2 = OrderSpec::parse("sqrt:2");
    // One certified floor sequence per order, sliced per sample; plus a few
    // full calls through the public entry point.
    const auto v32 = floor_sequence(100'000, c32);
    const auto vs2 = floor_sequence(100'000, s2);

    auto gen = oracle::rng(5);
    std::uniform_int_distribution<uint64_t> pick_x(1, 100'000), pick_q(1, 1'000);
    for (int i = 0; i < 200; ++i) {
        const uint64_t x = pick_x(gen), q = pick_q(gen);
        const bool use32 = (i % 2 == 0);
        const auto& values = use32 ? v32 : vs2;
        const ResidueProfile prof = residue_profile_in(
            std::span<const uint64_t>(values.data(), x), static_cast<double>(x), q);
        if (prof.total() != static_cast<int64_t>(x))
            return {false, fmt("x=%" PRIu64 " q=%" PRIu64 " c=%s: classes sum to %" PRId64, x, q,
                               (use32 ? "3/2" : "sqrt:2"), prof.total())};
    }
    for (int i = 0; i < 5; ++i) {
        const uint64_t x = 1 + pick_x(gen) / 8, q = pick_q(gen);
        const ResidueProfile prof = residue_profile(static_cast<double>(x), q, i % 2 ? c32 : s2);
        if (prof.total() != static_cast<int64_t>(x))
            return {false,
                    fmt("full call x=%" PRIu64 " q=%" PRIu64 ": sum %" PRId64, x, q, prof.total())};
    }
    return {true, "sum over residue classes equals floor(x) on 200 random samples"};
}

// ---- 6: squarefree divisors of squares come from the base ------------------

std::pair<bool, std::string> square_divisor_identity() {
    const OrderSpec two = OrderSpec::parse("2");
    const auto mu = oracle::mobius_sieve(100);
    const auto values = floor_sequence(10'000, two);

    for (uint64_t d = 1; d <= 100; ++d) {
        if (mu[d] == 0) continue; // squarefree only
        // Full sweep over every cutoff via one pass on the value sequence.
        int64_t running = 0;
        for (uint64_t x = 1; x <= 10'000; ++x) {
            if (values[x - 1] % d == 0) ++running;
            if (running != static_cast<int64_t>(x / d))
                return {false, fmt("d=%" PRIu64 " x=%" PRIu64 ": count %" PRId64
                                   " != floor(x/d) %" PRIu64,
                                   d, x, running, x / d)};
        }
        // Spot checks through the public entry point.
        for (double x : {97.0, 4'999.0, 10'000.0}) {
            const int64_t counted = divisor_count(x, d, two);
            if (counted != static_cast<int64_t>(static_cast<uint64_t>(x) / d))
                return {false, fmt("divisor_count d=%" PRIu64 " x=%.0f: %" PRId64, d, x, counted)};
        }
    }
    return {true, "d | floor(n^2) iff d | n for all squarefree d <= 100, x <= 10^4"};
}

// ---- 7: certified floors vs integer square roots up to a million ----------

std::pair<bool, std::string> certified_floor_oracle() {
    const OrderSpec c = OrderSpec::parse("3/2");
    const auto t0 = std::chrono::steady_clock::now();
    const auto values = floor_sequence(1'000'000, c);
    for (uint64_t n = 1; n <= 1'000'000; ++n) {
        const uint64_t cube = n * n * n;
        if (values[n - 1] != oracle::isqrt_u64(cube))
            return {false, fmt("n=%" PRIu64 ": floor %" PRIu64 " != isqrt(n^3) %" PRIu64, n,
                               values[n - 1], oracle::isqrt_u64(cube))};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {secs < 30.0, fmt("10^6 floors match isqrt(n^3) in %.1f s (need < 30)", secs)};
}

// ---- 8: exact exponent identities ------------------------------------------

std::pair<bool, std::string> exponent_identities() {
    // Symbolic order c: verify at several rational instantiations.
    for (const Rat& c : {Rat(3, 2), Rat(5, 4), Rat(27, 20)}) {
        const auto [x1, q1] = ap_exponent(1, c);
        const auto [x2, q2] = ap_exponent(2, c);
        const auto [x3, q3] = ap_exponent(3, c);
        if (x1 != c || q1 != -1) return {false, "level 1 exponent is not (c, -1)"};
        if (x2 != (c + 1) / 3 || q2 != Rat(-1, 3))
            return {false, "level 2 exponent is not ((c+1)/3, -1/3)"};
        if (x3 != (c + 4) / 7 || q3 != Rat(-1, 7))
            return {false, "level 3 exponent is not ((c+4)/7, -1/7)"};
        if (pair_error_exponent(2, c, 2) != (c + 4) / 3)
            return {false, "pair exponent at level 2 is not (c+4)/3"};
        if (pair_error_exponent(3, c, 2) != (c + 11) / 7)
            return {false, "pair exponent at level 3 is not (c+11)/7"};
        for (int k = 1; k <= 6; ++k)
            if (level_crossing_theta(k, c) != c + 1 - k - rat_pow2(-k))
                return {false, fmt("crossing theta broken at k=%d", k)};
    }
    // The two strict inequalities flip exactly at c = 5/4.
    for (int side : {-1, +1}) {
        const Rat c = Rat(5, 4) + Rat(side, 100);
        const bool expect = side > 0;
        const bool first = pair_error_exponent(2, c, 2) < (2 * c + 1) / 2;
        const bool second = pair_error_exponent(3, c, 2) < pair_error_exponent(2, c, 2);
        if (first != expect || second != expect)
            return {false, fmt("inequalities at c = 5/4 %c 1/100 came out wrong",
                               side > 0 ? '+' : '-')};
    }
    return {true, "exponent triple, pair exponents, crossings, and both equivalences exact"};
}

// ---- 9: optimizer vs dense grid search -------------------------------------

std::pair<bool, std::string> optimizer_oracle() {
    auto gen = oracle::rng(9);
    std::uniform_int_distribution<int> n_terms(1, 3), num(-6, 6), den(1, 4);
    auto random_rat = [&] { return Rat(num(gen), den(gen)); };

    auto eval_log = [](const OptProblem& p, const LogMonomial& m, double var_log) {
        double total = 0;
        for (const auto& [name, e] : m.exps())
            total += rat_double(e) * (name == p.var ? var_log : rat_double(p.aux_log.at(name)));
        return total;
    };

    for (int trial = 0; trial < 100; ++trial) {
        OptProblem p;
        p.var = "t";
        for (int i = 0, n = n_terms(gen); i < n; ++i) {
            Rat e = random_rat();
            if (e <= 0) e = -e + Rat(1, 3);
            p.increasing.push_back(LogMonomial::var("t", e) * LogMonomial::var("e", random_rat()));
        }
        for (int i = 0, n = n_terms(gen); i < n; ++i) {
            Rat e = random_rat();
            if (e > 0) e = -e;
            p.decreasing.push_back(LogMonomial::var("t", e) * LogMonomial::var("e", random_rat()));
        }
        p.aux_log["e"] = 1;

        const OptResult r = optimize(p);
        if (r.unbounded || !r.value_log) return {false, fmt("trial %d came back unbounded", trial)};
        const double exact = rat_double(*r.value_log);

        double scanned = std::numeric_limits<double>::infinity();
        const int steps = 200'000;
        for (int i = 0; i <= steps; ++i) {
            const double v = -60.0 + 120.0 * i / steps;
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& t : p.increasing) worst = std::max(worst, eval_log(p, t, v));
            for (const auto& t : p.decreasing) worst = std::max(worst, eval_log(p, t, v));
            scanned = std::min(scanned, worst);
        }
        if (scanned < exact - 1e-9 || scanned > exact + 0.01)
            return {false, fmt("trial %d: optimizer %.6f vs grid %.6f", trial, exact, scanned)};
    }

    // The worked instance: for every level the optimizer's symbolic answer
    // equals the closed-form exponent pair.
    for (int k = 2; k <= 6; ++k) {
        const Rat c(3, 2);
        const OptResult r = block_count_instance(k, c);
        const auto [ex, eq] = ap_exponent(k, c);
        if (r.unbounded || r.value.exp_of("M") != ex || r.value.exp_of("q") != eq)
            return {false, fmt("block-count instance at k=%d missed the closed form", k)};
    }
    return {true, "100 random problems match grid search; worked instance exact for k = 2..6"};
}

// ---- 10: oscillating-sum bounds on the fixed grid ---------------------------

std::pair<bool, std::string> expsum_bounds() {
    const OrderSpec c = OrderSpec::parse("3/2");
    // Frozen envelope for max |weyl_sum| / vdc_bound over this exact grid
    // (value recorded from the initial run, rounded up in the 9th decimal).
    // The bound itself carries an unspecified absolute constant, so the test
    // asserts finiteness and no regression past the frozen envelope.
    const double golden = 1.711703858;

    double worst = 0;
    for (int j = 0; j <= 16; ++j) {
        const double m = std::exp2(j);
        const DyadicBlock block(m, 2 * m);
        for (uint64_t h = 1; h <= 8; ++h) {
            for (uint64_t q : {uint64_t{1}, uint64_t{3}, uint64_t{7}}) {
                const PhaseParams phase{h, q, c};
                const double s = std::abs(weyl_sum(block, phase));
                const double n = static_cast<double>(block.terms());
                const double f = phase_scale(phase, m);
                for (int k : {2, 3}) {
                    const double ratio = s / vdc_bound(f, n, k);
                    if (!std::isfinite(ratio)) return {false, "ratio not finite"};
                    worst = std::max(worst, ratio);
                }
            }
        }
    }
    if (worst > golden)
        return {false, fmt("max |sum|/bound = %.9f exceeds frozen envelope %.9f", worst, golden)};

    // Discrepancy inequality with a tenfold allowance at H = sqrt(N).
    double worst_et = 0;
    for (int j : {10, 12, 14}) {
        const uint64_t n = uint64_t{1} << j;
        for (uint64_t q : {uint64_t{1}, uint64_t{3}, uint64_t{7}}) {
            const auto fracs = phase_fracs(n, PhaseParams{1, q, c});
            for (auto [alpha, beta] :
                 {std::pair{0.0, 0.5}, std::pair{0.25, 0.75}, std::pair{0.3, 0.4}}) {
                EtBoundInput in;
                in.fracs = fracs;
                in.alpha = alpha;
                in.beta = beta;
                in.H = std::sqrt(static_cast<double>(n));
                const EtSides sides = et_sides(in);
                worst_et = std::max(worst_et, sides.lhs / sides.rhs);
            }
        }
    }
    if (worst_et > 10.0)
        return {false, fmt("discrepancy lhs/rhs = %.3f exceeds 10", worst_et)};
    return {true, fmt("max |sum|/bound = %.9f (envelope %.9f); max lhs/rhs = %.3f (need <= 10)",
                      worst, golden, worst_et)};
}

// ---- 11: self-coprimality density -------------------------------------------

std::pair<bool, std::string> dd_density() {
    const double x = 100'000;
    const double target = 1.0 / zeta(2);
    double worst = 0;
    for (const char* text : {"3/2", "sqrt:2"}) {
        const int64_t count = dd_coprime_count(x, OrderSpec::parse(text));
        worst = std::max(worst, std::abs(static_cast<double>(count) / x - target));
    }
    return {worst <= 0.02,
            fmt("max |density - 1/zeta(2)| = %.5f at x = 10^5 (need <= 0.02)", worst)};
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    run(1, routes_identical);
    run(2, integer_orders_classical);
    run(3, order_one_error_constant);
    run(4, pair_error_slope);
    run(5, partition_identity);
    run(6, square_divisor_identity);
    run(7, certified_floor_oracle);
    run(8, exponent_identities);
    run(9, optimizer_oracle);
    run(10, expsum_bounds);
    run(11, dd_density);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 11 criteria failed; total %.1f s\n", failures, secs);
    return failures;
}
