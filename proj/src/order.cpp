#include "pst/order.hpp"

#include <cmath>

#include "pst/errors.hpp"

namespace pst {

namespace {

void check_ge_one(const Rat& v) {
    if (v < 1) throw ParseError("order must be >= 1, got " + rat_str(v));
}

bool is_perfect_square_u64(uint64_t m) {
    mpz_class z(static_cast<unsigned long>(m));
    return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

} // namespace

OrderSpec OrderSpec::rational(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    check_ge_one(c);
    OrderSpec o;
    o.kind_ = OrderKind::rational;
    o.value_ = c;
    return o;
}

OrderSpec OrderSpec::rational(long p, long s) {
    if (p <= 0 || s <= 0) throw ParseError("order numerator/denominator must be positive");
    return rational(Rat(p, s));
}

OrderSpec OrderSpec::sqrt_int(uint64_t m) {
    if (m < 2) throw ParseError("sqrt order argument must be >= 2");
    if (is_perfect_square_u64(m))
        throw ParseError("sqrt order argument must not be a perfect square");
    OrderSpec o;
    o.kind_ = OrderKind::sqrt_int;
    o.m_ = m;
    return o;
}

OrderSpec OrderSpec::decimal(const std::string& digits) {
    if (digits.find('.') == std::string::npos)
        throw ParseError("decimal order needs a '.': " + digits);
    Rat v = rat_from_string(digits);
    check_ge_one(v);
    OrderSpec o;
    o.kind_ = OrderKind::decimal;
    o.value_ = v;
    return o;
}

OrderSpec OrderSpec::parse(const std::string& text) {
    if (text.rfind("sqrt:", 0) == 0) {
        const std::string arg = text.substr(5);
        try {
            size_t pos = 0;
            const unsigned long long m = std::stoull(arg, &pos);
            if (pos != arg.size()) throw ParseError("bad sqrt order: " + text);
            return sqrt_int(m);
        } catch (const std::logic_error&) {
            throw ParseError("bad sqrt order: " + text);
        }
    }
    if (text.find('.') != std::string::npos) return decimal(text);
    return rational(rat_from_string(text));
}

bool OrderSpec::is_integer() const {
    return is_rational() && value_.get_den() == 1;
}

const Rat& OrderSpec::rational_value() const {
    if (!is_rational()) throw std::logic_error("order is not rational");
    return value_;
}

uint64_t OrderSpec::sqrt_arg() const {
    if (kind_ != OrderKind::sqrt_int) throw std::logic_error("order is not a square root");
    return m_;
}

double OrderSpec::approx() const {
    if (is_rational()) return rat_double(value_);
    return std::sqrt(static_cast<double>(m_));
}

std::string OrderSpec::str() const {
    if (kind_ == OrderKind::sqrt_int) return "sqrt:" + std::to_string(m_);
    return rat_str(value_);
}

int OrderSpec::cmp(const OrderSpec& other) const {
    // Compare exactly; both values are >= 1, so rational-vs-sqrt reduces to
    // comparing squares.
    const bool a_rat = is_rational(), b_rat = other.is_rational();
    if (a_rat && b_rat) return ::cmp(value_, other.value_);
    if (!a_rat && !b_rat) return m_ < other.m_ ? -1 : (m_ > other.m_ ? 1 : 0);
    if (a_rat) {
        const Rat sq = value_ * value_;
        return ::cmp(sq, Rat(static_cast<unsigned long>(other.m_)));
    }
    const Rat sq = other.value_ * other.value_;
    return -::cmp(sq, Rat(static_cast<unsigned long>(m_)));
}

} // namespace pst
