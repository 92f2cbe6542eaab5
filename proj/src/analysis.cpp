#include "pst/analysis.hpp"

#include <cmath>

#include "pst/errors.hpp"
#include "pst/parallel.hpp"
#include "pst/psseq.hpp"

namespace pst {

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ParseError("empty cutoff grid");
    for (size_t i = 0; i < grid.size(); ++i) {
        trunc_x(grid[i]);
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw ParseError("cutoff grid must be strictly increasing");
    }
}

// Double-precision twin of the exact level selection: the unique k >= 2 with
// k - 2 + 2^{1-k} < c <= k - 1 + 2^{-k}.
int choose_k_approx(double c) {
    for (int k = 2; k <= 64; ++k)
        if (k - 2 + std::exp2(1 - k) < c && c <= k - 1 + std::exp2(-k)) return k;
    throw BudgetError("no level k <= 64 admissible");
}

double tuple_exponent_approx(double c, int r) {
    const int k = choose_k_approx(c);
    return r - (k - c) / (std::exp2(k) - 1);
}

} // namespace

ErrorCurve error_curve_pairs(const std::vector<double>& grid, const OrderSpec& c,
                             const Factorizer& f, const Budgets& budgets) {
    return error_curve_tuples(grid, {c, c}, f, budgets);
}

ErrorCurve error_curve_tuples(const std::vector<double>& grid, const std::vector<OrderSpec>& orders,
                              const Factorizer& f, const Budgets& budgets) {
    check_grid(grid);
    ErrorCurve curve;
    curve.kind = orders.size() == 2 && orders[0] == orders[1] ? CurveKind::pairs : CurveKind::tuples;
    curve.orders = TupleSpec(orders, grid.front()).orders; // validated + sorted
    curve.samples.resize(grid.size());
    const int r = static_cast<int>(orders.size());
    ErrorCollector errors;
    // Each grid point is evaluated independently; on a geometric grid the
    // total work is only a constant factor above the largest point.
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < static_cast<int64_t>(grid.size()); ++i) {
        errors.run([&, i] {
            const double x = grid[static_cast<size_t>(i)];
            const int64_t count = coprime_tuples_mobius(TupleSpec(orders, x), f, budgets);
            curve.samples[static_cast<size_t>(i)] = {
                x, std::abs(static_cast<double>(count) - main_term(x, r))};
        });
    }
    errors.rethrow();
    return curve;
}

ErrorCurve error_curve_ap(const std::vector<double>& grid, int64_t a, uint64_t q,
                          const OrderSpec& c, const Budgets& budgets) {
    check_grid(grid);
    if (q == 0) throw ParseError("modulus q must be >= 1");
    ErrorCurve curve;
    curve.kind = CurveKind::ap;
    curve.orders = {c};
    curve.q = q;
    curve.a = a;
    curve.samples.resize(grid.size());
    ErrorCollector errors;
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < static_cast<int64_t>(grid.size()); ++i) {
        errors.run([&, i] {
            const double x = grid[static_cast<size_t>(i)];
            const int64_t count = count_ap(x, a, q, c, budgets);
            curve.samples[static_cast<size_t>(i)] = {
                x, std::abs(static_cast<double>(count) - x / static_cast<double>(q))};
        });
    }
    errors.rethrow();
    return curve;
}

ErrorCurve error_curve_dd(const std::vector<double>& grid, const OrderSpec& c,
                          const Budgets& budgets) {
    check_grid(grid);
    ErrorCurve curve;
    curve.kind = CurveKind::dd;
    curve.orders = {c};
    curve.samples.resize(grid.size());
    const double density = 1.0 / zeta(2);
    ErrorCollector errors;
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < static_cast<int64_t>(grid.size()); ++i) {
        errors.run([&, i] {
            const double x = grid[static_cast<size_t>(i)];
            const int64_t count = dd_coprime_count(x, c, budgets);
            curve.samples[static_cast<size_t>(i)] = {
                x, std::abs(static_cast<double>(count) - density * x)};
        });
    }
    errors.rethrow();
    return curve;
}

SlopeFit fit_slope(const ErrorCurve& curve) {
    std::vector<double> u, w;
    int dropped = 0;
    for (const auto& s : curve.samples) {
        if (s.observed > 0) {
            u.push_back(std::log(s.x));
            w.push_back(std::log(s.observed));
        } else {
            ++dropped;
        }
    }
    const int n = static_cast<int>(u.size());
    if (n < 3) throw ParseError("slope fit needs at least three nonzero samples");

    double um = 0, wm = 0;
    for (int i = 0; i < n; ++i) {
        um += u[i];
        wm += w[i];
    }
    um /= n;
    wm /= n;
    double suu = 0, suw = 0;
    for (int i = 0; i < n; ++i) {
        suu += (u[i] - um) * (u[i] - um);
        suw += (u[i] - um) * (w[i] - wm);
    }
    if (suu == 0) throw ParseError("slope fit needs distinct x values");

    SlopeFit fit;
    fit.slope = suw / suu;
    fit.intercept = wm - fit.slope * um;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        const double resid = w[i] - (fit.intercept + fit.slope * u[i]);
        ss += resid * resid;
    }
    fit.residual_rms = std::sqrt(ss / n);
    fit.n_points = n;
    fit.dropped_zeros = dropped;
    return fit;
}

double constant_fit(const ErrorCurve& curve, double exponent) {
    double best = 0;
    for (const auto& s : curve.samples)
        best = std::max(best, s.observed / std::pow(s.x, exponent));
    return best;
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
    if (!(lo >= 1) || !(hi >= lo)) throw ParseError("grid needs 1 <= lo <= hi");
    if (!(ratio > 1)) throw ParseError("grid ratio must exceed 1");
    std::vector<double> grid;
    for (double x = lo; x <= hi * (1 + 1e-12); x *= ratio) grid.push_back(std::min(x, hi));
    return grid;
}

double theoretical_exponent(const ErrorCurve& curve) {
    switch (curve.kind) {
        case CurveKind::pairs:
        case CurveKind::tuples:
            // The largest order drives the proven exponent (orders are sorted).
            return tuple_exponent_approx(curve.orders.back().approx(),
                                         static_cast<int>(curve.orders.size()));
        case CurveKind::ap: {
            // Strongest proven level for the largest cutoff of the curve.
            const double c = curve.orders.front().approx();
            const double x = curve.samples.empty() ? 2.0 : curve.samples.back().x;
            const double theta = std::log(static_cast<double>(curve.q)) / std::log(x);
            for (int k = 1; k <= 64; ++k) {
                if (theta > c + 1 - k - std::exp2(-k)) {
                    const double d = std::exp2(k) - 1;
                    return 1 - (k - c) / d - theta / d;
                }
            }
            return 1;
        }
        case CurveKind::dd:
            return 1; // density error measured against x itself
    }
    return 1;
}

} // namespace pst
