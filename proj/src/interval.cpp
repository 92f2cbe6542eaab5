#include "pst/interval.hpp"

#include <utility>

namespace pst {

RealInterval::RealInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD); // same precision: exact
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
    }
    return *this;
}

RealInterval::~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void RealInterval::set_integer(const mpz_class& z) {
    mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

void RealInterval::set_ui(unsigned long u) {
    mpfr_set_ui(lo_, u, MPFR_RNDD);
    mpfr_set_ui(hi_, u, MPFR_RNDU);
}

void RealInterval::set_sqrt_ui(unsigned long m) {
    mpfr_sqrt_ui(lo_, m, MPFR_RNDD);
    mpfr_sqrt_ui(hi_, m, MPFR_RNDU);
}

void RealInterval::root_n(unsigned long s) {
    mpfr_rootn_ui(lo_, lo_, s, MPFR_RNDD);
    mpfr_rootn_ui(hi_, hi_, s, MPFR_RNDU);
}

void RealInterval::log_positive() {
    mpfr_log(lo_, lo_, MPFR_RNDD);
    mpfr_log(hi_, hi_, MPFR_RNDU);
}

void RealInterval::exp_() {
    mpfr_exp(lo_, lo_, MPFR_RNDD);
    mpfr_exp(hi_, hi_, MPFR_RNDU);
}

void RealInterval::mul_positive(const RealInterval& o) {
    // Both operands nonnegative, so lo*lo / hi*hi are the extreme products.
    mpfr_mul(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(hi_, hi_, o.hi_, MPFR_RNDU);
}

void RealInterval::mul_ui(unsigned long f) {
    mpfr_mul_ui(lo_, lo_, f, MPFR_RNDD);
    mpfr_mul_ui(hi_, hi_, f, MPFR_RNDU);
}

void RealInterval::div_ui(unsigned long d) {
    mpfr_div_ui(lo_, lo_, d, MPFR_RNDD);
    mpfr_div_ui(hi_, hi_, d, MPFR_RNDU);
}

void RealInterval::sub_integer(const mpz_class& z) {
    mpfr_sub_z(lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_sub_z(hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
}

bool RealInterval::same_floor(mpz_class& out) const {
    mpz_class fl, fh;
    mpfr_get_z(fl.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(fh.get_mpz_t(), hi_, MPFR_RNDD);
    if (fl != fh) return false;
    out = fl;
    return true;
}

double RealInterval::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double RealInterval::mid() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double RealInterval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

} // namespace pst
