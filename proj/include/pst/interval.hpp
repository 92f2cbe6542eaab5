#pragma once
#include <gmpxx.h>
#include <mpfr.h>

namespace pst {

// A closed interval [lo, hi] with MPFR endpoints at a fixed working
// precision. Every operation rounds lo down and hi up, so the interval
// always contains the exact result; that is the whole correctness story of
// the certified-floor machinery, so keep any new operation directed the
// same way. Operations marked "positive" assume lo >= 0 and are only ever
// called on such values here.
class RealInterval {
public:
    explicit RealInterval(mpfr_prec_t prec);
    RealInterval(const RealInterval& o);
    RealInterval& operator=(const RealInterval& o);
    RealInterval(RealInterval&& o) noexcept;
    RealInterval& operator=(RealInterval&& o) noexcept;
    ~RealInterval();

    mpfr_prec_t precision() const { return prec_; }

    void set_integer(const mpz_class& z); // may round when z needs more bits than prec
    void set_ui(unsigned long u);
    void set_sqrt_ui(unsigned long m); // enclosure of sqrt(m)

    void root_n(unsigned long s); // s-th root, positive
    void log_positive();          // requires lo > 0
    void exp_();
    void mul_positive(const RealInterval& o);
    void mul_ui(unsigned long f);
    void div_ui(unsigned long d);
    void sub_integer(const mpz_class& z);

    // True when both endpoints have the same floor; the common floor is then
    // the certified floor of every point of the interval.
    bool same_floor(mpz_class& out) const;

    double width() const; // hi - lo, rounded up
    double mid() const;
    double lo_d() const;
    double hi_d() const;

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

} // namespace pst
