#include "pst/realpow.hpp"

#include <cmath>

#include "pst/errors.hpp"
#include "pst/parallel.hpp"

namespace pst {

namespace {

// Numerator/denominator of a rational order as machine words, with a sanity
// cap so n^p cannot explode past any reasonable working set.
struct RatExp {
    unsigned long p, s;
};

RatExp rat_exponent(const OrderSpec& c) {
    const Rat& v = c.rational_value();
    if (!v.get_num().fits_ulong_p() || !v.get_den().fits_ulong_p())
        throw BudgetError("order numerator/denominator too large");
    return {v.get_num().get_ui(), v.get_den().get_ui()};
}

mpz_class pow_u64(uint64_t n, unsigned long p) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), p);
    return r;
}

void check_pow_size(uint64_t n, unsigned long p) {
    // ~10^7 bits is already far beyond anything the counting layers ask for.
    const double bits = static_cast<double>(p) * std::log2(static_cast<double>(n) + 1.0);
    if (bits > 1e7) throw BudgetError("n^p exceeds the size budget");
}

} // namespace

std::optional<mpz_class> is_exact_power(uint64_t n, const OrderSpec& c) {
    if (n == 0) throw ParseError("n must be >= 1");
    if (c.is_rational()) {
        const RatExp e = rat_exponent(c);
        check_pow_size(n, e.p);
        if (e.s == 1) return pow_u64(n, e.p);
        // p/s is in lowest terms, so n^p is an s-th power iff n itself is.
        mpz_class nz(static_cast<unsigned long>(n)), root;
        if (mpz_root(root.get_mpz_t(), nz.get_mpz_t(), e.s) != 0) {
            mpz_class r;
            mpz_pow_ui(r.get_mpz_t(), root.get_mpz_t(), e.p);
            return r;
        }
        return std::nullopt;
    }
    if (n == 1) return mpz_class(1);
    return std::nullopt;
}

RealInterval pow_enclosure(uint64_t n, const OrderSpec& c, mpfr_prec_t prec) {
    RealInterval out(prec);
    if (c.is_rational()) {
        const RatExp e = rat_exponent(c);
        check_pow_size(n, e.p);
        out.set_integer(pow_u64(n, e.p));
        if (e.s > 1) out.root_n(e.s);
        return out;
    }
    // n^sqrt(m) = exp(sqrt(m) * log n); n = 1 gives the exact point 1.
    RealInterval ce(prec);
    ce.set_sqrt_ui(static_cast<unsigned long>(c.sqrt_arg()));
    out.set_ui(static_cast<unsigned long>(n));
    out.log_positive();
    out.mul_positive(ce);
    out.exp_();
    return out;
}

CertifiedFloor floor_pow(uint64_t n, const OrderSpec& c, const Budgets& budgets) {
    CertifiedFloor result;
    result.n = n;
    if (auto exact = is_exact_power(n, c)) {
        result.value = std::move(*exact);
        result.bits = 0;
        result.exact = true;
        return result;
    }
    // n^c is irrational here, so some precision certifies the floor: the
    // enclosure eventually stops straddling an integer.
    for (mpfr_prec_t prec = budgets.start_bits; prec <= budgets.max_bits; prec *= 2) {
        const RealInterval enc = pow_enclosure(n, c, prec);
        if (enc.same_floor(result.value)) {
            result.bits = prec;
            result.exact = false;
            return result;
        }
    }
    throw PrecisionError("floor not certified within the precision cap");
}

double frac_part_scaled(uint64_t n, uint64_t h, uint64_t q, const OrderSpec& c, double eps,
                        const Budgets& budgets) {
    if (h == 0 || q == 0) throw ParseError("h and q must be >= 1");
    if (!(eps > 0)) throw ParseError("eps must be positive");
    if (auto exact = is_exact_power(n, c)) {
        mpz_class num = mpz_class(static_cast<unsigned long>(h)) * (*exact);
        mpz_class rem;
        mpz_mod_ui(rem.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(q));
        return Rat(rem, mpz_class(static_cast<unsigned long>(q))).get_d();
    }
    for (mpfr_prec_t prec = budgets.start_bits; prec <= budgets.max_bits; prec *= 2) {
        RealInterval enc = pow_enclosure(n, c, prec);
        enc.mul_ui(static_cast<unsigned long>(h));
        enc.div_ui(static_cast<unsigned long>(q));
        mpz_class ipart;
        if (enc.width() < eps && enc.same_floor(ipart)) {
            enc.sub_integer(ipart);
            double f = enc.mid();
            if (f < 0) f = 0;
            if (f >= 1) f = std::nextafter(1.0, 0.0);
            return f;
        }
    }
    throw PrecisionError("fractional part not certified within the precision cap");
}

uint64_t trunc_x(double x) {
    if (!(x >= 1) || !(x < 9.0e18) || !std::isfinite(x))
        throw ParseError("cutoff x must satisfy 1 <= x < 9e18");
    return static_cast<uint64_t>(std::floor(x));
}

std::vector<uint64_t> floor_sequence(double x, const OrderSpec& c, const Budgets& budgets) {
    const uint64_t count = trunc_x(x);
    std::vector<uint64_t> values(count);
    ErrorCollector errors;
#pragma omp parallel for schedule(dynamic, 1024)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
        errors.run([&, i] {
            const CertifiedFloor f = floor_pow(static_cast<uint64_t>(i) + 1, c, budgets);
            if (!f.value.fits_ulong_p())
                throw BudgetError("floor(n^c) does not fit in 64 bits at n = " +
                                  std::to_string(i + 1));
            values[static_cast<size_t>(i)] = f.value.get_ui();
        });
    }
    errors.rethrow();
    return values;
}

} // namespace pst
