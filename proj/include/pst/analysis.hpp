#pragma once
#include <cstdint>
#include <vector>

#include "pst/budgets.hpp"
#include "pst/coprime.hpp"
#include "pst/order.hpp"

namespace pst {

enum class CurveKind { pairs, tuples, ap, dd };

// Observed error sizes along a grid of cutoffs, plus enough metadata to
// recompute the matching theoretical exponent.
struct ErrorCurve {
    CurveKind kind = CurveKind::pairs;
    std::vector<OrderSpec> orders;
    uint64_t q = 0; // ap curves only
    int64_t a = 0;  // ap curves only

    struct Sample {
        double x = 1;
        double observed = 0; // |actual - main term|, or |count - x/q| for ap
    };
    std::vector<Sample> samples; // x strictly increasing
};

// Least-squares slope of log(observed) against log(x). Zero observations
// carry no log and are dropped (their number is reported); at least three
// nonzero samples are required.
struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double residual_rms = 0;
    int n_points = 0;
    int dropped_zeros = 0;
};

ErrorCurve error_curve_pairs(const std::vector<double>& grid, const OrderSpec& c,
                             const Factorizer& f = default_factorizer(),
                             const Budgets& budgets = {});
ErrorCurve error_curve_tuples(const std::vector<double>& grid, const std::vector<OrderSpec>& orders,
                              const Factorizer& f = default_factorizer(),
                              const Budgets& budgets = {});
ErrorCurve error_curve_ap(const std::vector<double>& grid, int64_t a, uint64_t q,
                          const OrderSpec& c, const Budgets& budgets = {});
ErrorCurve error_curve_dd(const std::vector<double>& grid, const OrderSpec& c,
                          const Budgets& budgets = {});

SlopeFit fit_slope(const ErrorCurve& curve);

// Smallest C with observed <= C * x^exponent across the curve.
double constant_fit(const ErrorCurve& curve, double exponent);

// x0, x0*ratio, x0*ratio^2, ... up to and including the last point <= hi.
std::vector<double> geometric_grid(double lo, double hi, double ratio);

// Reference exponent for a curve's theoretical column: the proven error
// exponent with every logarithm dropped. For pair/tuple curves this needs a
// rational order; sqrt orders use their double approximation.
double theoretical_exponent(const ErrorCurve& curve);

} // namespace pst
