#pragma once
#include <cstdint>
#include <string>

#include "pst/rational.hpp"

namespace pst {

enum class OrderKind { rational, sqrt_int, decimal };

// The order c >= 1 of a sequence floor(n^c), held exactly: a rational p/s in
// lowest terms, the square root of a non-square integer >= 2, or a decimal
// literal (kept as the exact rational its digits denote). There is no lossy
// double anywhere in here; approx() is for display and heuristics only.
class OrderSpec {
public:
    OrderSpec() = default; // c = 1

    static OrderSpec rational(const Rat& v);
    static OrderSpec rational(long p, long s);
    static OrderSpec sqrt_int(uint64_t m);
    static OrderSpec decimal(const std::string& digits);
    static OrderSpec parse(const std::string& text); // "3/2" | "sqrt:2" | "2.7" | "2"

    OrderKind kind() const { return kind_; }
    bool is_rational() const { return kind_ != OrderKind::sqrt_int; } // decimal counts: it is exact
    bool is_integer() const;

    const Rat& rational_value() const; // requires is_rational()
    uint64_t sqrt_arg() const;         // requires kind() == sqrt_int

    double approx() const;
    std::string str() const;

    // Exact three-way comparison of the order values (rational vs sqrt
    // compares squares). Used to sort tuple orders deterministically.
    int cmp(const OrderSpec& other) const;
    bool operator==(const OrderSpec& other) const { return cmp(other) == 0; }

private:
    OrderKind kind_ = OrderKind::rational;
    Rat value_ = 1;  // exact value for rational/decimal kinds
    uint64_t m_ = 0; // sqrt_int argument
};

} // namespace pst
