#pragma once
#include <gmpxx.h>
#include <string>

namespace pst {

// Exact rational arithmetic is gmpxx's mpq_class throughout.
using Rat = mpq_class;

// Parses "p/q", a plain integer, or a decimal literal such as "2.7"
// (taken as the exact rational its digits denote). Throws ParseError.
Rat rat_from_string(const std::string& text);

std::string rat_str(const Rat& r); // "p/q", or just "p" when the denominator is 1
double rat_double(const Rat& r);

Rat rat_pow2(long k); // 2^k, k may be negative
mpz_class rat_floor(const Rat& r);

} // namespace pst
