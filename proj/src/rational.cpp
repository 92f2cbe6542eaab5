#include "pst/rational.hpp"

#include <cctype>

#include "pst/errors.hpp"

namespace pst {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace

Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");

    // One optional sign up front covers every form below.
    if (text[0] == '-' || text[0] == '+') {
        const Rat mag = rat_from_string(text.substr(1));
        return text[0] == '-' ? Rat(-mag) : mag;
    }

    // Digit strings are always base 10 here; the gmpxx string constructor
    // defaults to base 0, which would read a leading zero as octal.
    const auto from_digits = [](const std::string& s) { return mpz_class(s, 10); };

    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        // Decimal literal: digits '.' digits, taken exactly.
        const std::string ipart = text.substr(0, dot);
        const std::string fpart = text.substr(dot + 1);
        if (!all_digits(ipart) || !all_digits(fpart))
            throw ParseError("bad decimal literal: " + text);
        mpz_class num = from_digits(ipart + fpart);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fpart.size());
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("bad rational literal: " + text);
        Rat r{from_digits(num), from_digits(den)};
        if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
        r.canonicalize();
        return r;
    }

    if (!all_digits(text)) throw ParseError("bad integer literal: " + text);
    return Rat(from_digits(text));
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double rat_double(const Rat& r) { return r.get_d(); }

Rat rat_pow2(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rat(p) : Rat(mpz_class(1), p);
}

mpz_class rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

} // namespace pst
